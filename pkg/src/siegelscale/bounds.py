"""Closed-form bounds on Siegel-disk scaling ratios.

Evaluates every explicit constant and inequality attached to the scaling
ratio of a quadratic-irrational rotation number: the coarse window
(alpha, 1), the inscribed-triangle criterion, the cylinder modulus
-pi/ln(alpha^2), the four-case upper/lower bounds driven by a
quasisymmetric constant, the period-uniform envelope constants, the
quasisymmetric interval-ratio bounds, the quasiconformal angle-distortion
bound, and the Rengel sector lower bound.

The quasisymmetric constants are doubly-exponentially large, so the ledger
carries them as TowerReal values and every bound within native epsilon of
1 is reported through its distance from 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .contfrac import QuadraticIrrational, Surd, tail_product, tail_growth_floor
from .specfun import mu_inv, mu_inv_complement_ln, phi_distortion
from .towers import TowerReal

__all__ = [
    "ZETA",
    "ConstantsLedger",
    "constants_ledger",
    "BoundsReport",
    "scaling_ratio_bounds",
    "select_case",
    "EnvelopeConstants",
    "period_envelope_constants",
    "scaling_ratio_window",
    "triangle_criterion",
    "cylinder_modulus",
    "qs_interval_bounds",
    "qc_angle_lower_bound",
    "max_sector_angle",
    "rengel_lower_bound",
]

# sin(pi/12): chord constant of the two circle preimages meeting at the cusp
ZETA = math.sqrt(2.0) * (math.sqrt(3.0) - 1.0) / 4.0

_LN4 = math.log(4.0)
_LN16 = math.log(16.0)


# ---------------------------------------------------------------------------
# constants ledger
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantsLedger:
    """Distortion constants for partial quotients bounded by B.

    c is the cross-ratio-modulus floor ln(5/3) Q^{-6} / (8 pi); K1 the
    commensurability constant 2 (1 - mu_inv(c)^2)^{-6}; K2 = max(2, K1^{B+1})
    the conjugacy quasisymmetric constant; M = 2 K2 - 1 the quasiconformal
    bound of its extension; K the assembled interval quasisymmetric constant
    lambda(M)^{4 K2 - 2} K2^{2 K2 - 1}; gamma the lower-bound exponent,
    stored as one_minus_gamma because 1 - gamma is doubly small.
    """

    Q: int
    B: int
    c: float
    K1: TowerReal
    K2: TowerReal
    M: TowerReal
    K: TowerReal
    one_minus_gamma: TowerReal

    @property
    def ln_K1(self) -> float:
        return float(self.K1.ln())

    def to_json(self) -> dict:
        return {
            "Q": self.Q,
            "B": self.B,
            "c": self.c,
            "K1": self.K1.to_json(),
            "K2": self.K2.to_json(),
            "M": self.M.to_json(),
            "K": self.K.to_json(),
            "one_minus_gamma": self.one_minus_gamma.to_json(),
            "readable": {
                "K1": self.K1.readable(),
                "K2": self.K2.readable(),
                "M": self.M.readable(),
                "K": self.K.readable(),
                "one_minus_gamma": self.one_minus_gamma.readable(),
            },
        }


def constants_ledger(Q: int = 8, B: int = 1) -> ConstantsLedger:
    """Assemble the distortion constants for cross-ratio bound Q and quotient cap B."""
    if Q < 1 or B < 1:
        raise ValueError("constants_ledger requires Q >= 1 and B >= 1")
    c = math.log(5.0 / 3.0) * Q ** (-6) / (8.0 * math.pi)
    # K1 = 2 (1 - mu_inv(c)^2)^{-6}; the complement is formed analytically
    # because mu_inv(c) sits within a few ulp of 1 for every Q >= 1.
    if c <= 1.0 / 16.0:
        ln_one_minus_r2 = mu_inv_complement_ln(c)
    else:
        r = mu_inv(c)
        ln_one_minus_r2 = math.log((1.0 - r) * (1.0 + r))
    ln_K1 = math.log(2.0) - 6.0 * ln_one_minus_r2
    K1 = TowerReal.from_ln(ln_K1)
    K2 = max(TowerReal(2.0), K1 ** (B + 1))
    M = 2 * K2 - 1
    # ln K = (4 K2 - 2) ln lambda(M) + (2 K2 - 1) ln K2, lambda(M) = e^{pi M}/16
    ln_lam = math.pi * M - TowerReal(_LN16)
    ln_K = (4 * K2 - 2) * ln_lam + (2 * K2 - 1) * K2.ln()
    K = ln_K.exp()
    one_minus_gamma = TowerReal(16.0 / math.pi) * TowerReal(ZETA / 4.0) ** (M / 2)
    if not one_minus_gamma < 1:
        raise ArithmeticError("gamma left (0,1); ledger inputs out of range")
    return ConstantsLedger(Q=Q, B=B, c=c, K1=K1, K2=K2, M=M, K=K,
                           one_minus_gamma=one_minus_gamma)


# ---------------------------------------------------------------------------
# elementary bounds
# ---------------------------------------------------------------------------

def scaling_ratio_window(alpha: Surd | float) -> tuple[float, float]:
    """Open window (alpha, 1) that always contains |lambda|."""
    a = float(alpha)
    if not 0.0 < a < 1.0:
        raise ValueError(f"alpha must lie in (0,1), got {a}")
    return a, 1.0


def cylinder_modulus(alpha: Surd | float) -> float:
    """Modulus -pi / ln(alpha^2) of the self-similarity quotient cylinder."""
    a = float(alpha)
    if not 0.0 < a < 1.0:
        raise ValueError(f"alpha must lie in (0,1), got {a}")
    return -math.pi / math.log(a * a)


def triangle_criterion(alpha: Surd | float) -> bool:
    """True iff the cylinder modulus exceeds 1/2 (strictly).

    When it does, the Siegel disk contains a triangle with a vertex at the
    critical point.
    """
    return cylinder_modulus(alpha) > 0.5


def qs_interval_bounds(K: float, alpha: float, s: int, part: int) -> tuple[float, float]:
    """Two-sided bounds on |h(I)|/|h(J)| for a K-quasisymmetric h.

    part 1: I inside J, one shared endpoint, alpha = |I|/|J| <= 1/2;
    part 2: I and J adjacent (one common point), alpha = |I|/|J| <= 1;
    part 3: I inside J, one shared endpoint, 1/2 < alpha <= 1.
    theta = alpha^{-1/s} and nu = ((1+alpha)/alpha)^{1/s} enter through
    integer parts of s log2, so s only redistributes the same exponent.
    """
    if K < 1:
        raise ValueError("quasisymmetric constant K must be >= 1")
    if s < 1:
        raise ValueError("s must be >= 1")
    if part == 1:
        if not 0.0 < alpha <= 0.5:
            raise ValueError("part 1 requires 0 < alpha <= 1/2")
        m = math.floor(s * math.log2(alpha ** (-1.0 / s)))
        return (1.0 / (1.0 + K)) ** (m + 1), (1.0 / (1.0 + 1.0 / K)) ** m
    if part == 2:
        if not 0.0 < alpha <= 1.0:
            raise ValueError("part 2 requires 0 < alpha <= 1")
        m = math.floor(s * math.log2(((1.0 + alpha) / alpha) ** (1.0 / s)))
        return 1.0 / ((1.0 + K) ** (m + 1) - 1.0), 1.0 / ((1.0 + 1.0 / K) ** m - 1.0)
    if part == 3:
        if not 0.5 < alpha <= 1.0:
            raise ValueError("part 3 requires 1/2 < alpha <= 1")
        if alpha == 1.0:
            return 1.0, 1.0
        e = math.log2(alpha / (1.0 - alpha))
        lo = 1.0 / (K * (1.0 / (1.0 + 1.0 / K)) ** math.floor(e) + 1.0)
        hi = 1.0 / ((1.0 / K) * (1.0 / (1.0 + K)) ** (e + 1.0) + 1.0)
        return lo, hi
    raise ValueError(f"part must be 1, 2 or 3, got {part}")


def qc_angle_lower_bound(M, z0: complex, z1: complex, z2: complex) -> float:
    """Lower bound on the image angle parameter for an M-qc plane map.

    With theta = arcsin(|z1-z2| / (|z1-z0| + |z2-z0|)), the image parameter
    beta satisfies sin(beta/2) >= phi_M(sin(theta/2)); returns
    2 arcsin(phi_M(sin(theta/2))).
    """
    if z0 == z1 or z0 == z2 or z1 == z2:
        raise ValueError("points must be distinct")
    theta = math.asin(abs(z1 - z2) / (abs(z1 - z0) + abs(z2 - z0)))
    p = phi_distortion(math.sin(theta / 2.0), M)
    p = float(p) if isinstance(p, TowerReal) else p
    return 2.0 * math.asin(p)


def max_sector_angle(M) -> float:
    """Leading-order widest sector angle pi - 16 (zeta/4)^M, zeta = sin(pi/12)."""
    M_t = M if isinstance(M, TowerReal) else TowerReal(M)
    if M_t < 1:
        raise ValueError("max_sector_angle requires M >= 1")
    corr = 16.0 * TowerReal(ZETA / 4.0) ** M_t
    gamma = math.pi - float(corr)
    if gamma <= 0.0:
        raise ArithmeticError("asymptotic sector formula invalid: correction >= pi")
    return gamma


def rengel_lower_bound(alpha: Surd | float, gamma_max: float) -> float:
    """Rengel bound |lambda| >= alpha^{gamma_max/pi} from the strip geometry."""
    a = float(alpha)
    if not 0.0 < a < 1.0:
        raise ValueError("alpha must lie in (0,1)")
    if not 0.0 < gamma_max <= math.pi:
        raise ValueError("gamma_max must lie in (0, pi]")
    return a ** (gamma_max / math.pi)


# ---------------------------------------------------------------------------
# four-case bounds
# ---------------------------------------------------------------------------

_CASES = ("odd-large", "odd-small", "even-large", "even-small")


def select_case(s: int, alpha: float) -> str:
    """Case tag from period parity and the alpha threshold (1/sqrt2 or 1/2)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0,1)")
    if s % 2:
        return "odd-large" if alpha > 1.0 / math.sqrt(2.0) else "odd-small"
    return "even-large" if alpha > 0.5 else "even-small"


@dataclass(frozen=True)
class BoundsReport:
    """Evaluated scaling-ratio bounds for one rotation number."""

    cf: str
    s: int
    B: int
    alpha: float
    alpha_exact: str
    theta_rate: float          # alpha^{-1/s}
    case: str
    lower: float               # alpha^gamma at float resolution (= alpha)
    lower_minus_alpha: TowerReal
    upper: TowerReal
    one_minus_upper: TowerReal
    vacuous_upper: bool
    asymptotic_factor_note: str = "prefactor C(n) reported in its n->infinity limit 1"

    def upper_readable(self) -> str:
        if self.vacuous_upper:
            return "1 (vacuous)"
        d = self.one_minus_upper
        return f"~ 1 - {d.readable()}"

    def to_json(self) -> dict:
        return {
            "cf": self.cf,
            "s": self.s,
            "B": self.B,
            "alpha": self.alpha,
            "alpha_exact": self.alpha_exact,
            "theta_rate": self.theta_rate,
            "case": self.case,
            "lower": self.lower,
            "lower_minus_alpha": self.lower_minus_alpha.to_json(),
            "upper": self.upper.to_json(),
            "one_minus_upper": self.one_minus_upper.to_json(),
            "upper_readable": self.upper_readable(),
            "vacuous_upper": self.vacuous_upper,
            "asymptotic_factor_note": self.asymptotic_factor_note,
        }


def scaling_ratio_bounds(cf: QuadraticIrrational, ledger: ConstantsLedger) -> BoundsReport:
    """Evaluate the four-case closed-form bounds for one rotation number.

    The upper bound differs from 1 by a multiple of K^{-1}, so it is carried
    as (upper, one_minus_upper) in tower form; the lower bound alpha^gamma
    differs from alpha by alpha (1-gamma) ln(1/alpha), likewise carried as a
    tower correction.
    """
    if ledger.B < cf.max_quotient:
        raise ValueError(
            f"ledger built for B = {ledger.B} < max partial quotient {cf.max_quotient}")
    alpha_s = tail_product(cf)
    alpha = float(alpha_s)
    s = cf.s
    theta_rate = alpha ** (-1.0 / s)
    case = select_case(s, alpha)
    K = ledger.K

    if case in ("odd-small", "even-small"):
        m = math.floor(s * math.log2(theta_rate))
        half = 2 if case == "odd-small" else 1
        if m == 0:
            one_minus_upper = TowerReal(0.0)
            upper = TowerReal(1.0)
            vacuous = True
        else:
            # (1 + 1/K)^{-m/half}: distance from 1 is (m/half) K^{-1} at
            # dominance resolution
            one_minus_upper = (m / half) * K.reciprocal()
            upper = TowerReal(1.0) - one_minus_upper
            vacuous = False
    else:
        ratio = alpha * alpha / (1.0 - alpha * alpha) if case == "odd-large" \
            else alpha / (1.0 - alpha)
        e = math.log2(ratio) + 1.0
        t = K.reciprocal() * (1 + K) ** (-e)
        # upper = (1+t)^{-1/2} (odd) or (1+t)^{-1} (even); 1 - upper = t/2 or t
        one_minus_upper = t / 2 if case == "odd-large" else t
        upper = TowerReal(1.0) - one_minus_upper
        vacuous = False

    lower_minus_alpha = alpha * ledger.one_minus_gamma * math.log(1.0 / alpha)
    return BoundsReport(
        cf=str(cf),
        s=s,
        B=ledger.B,
        alpha=alpha,
        alpha_exact=repr(alpha_s),
        theta_rate=theta_rate,
        case=case,
        lower=alpha,
        lower_minus_alpha=lower_minus_alpha,
        upper=upper,
        one_minus_upper=one_minus_upper,
        vacuous_upper=vacuous,
    )


# ---------------------------------------------------------------------------
# period-uniform envelope constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnvelopeConstants:
    """Period-uniform constants (C2, delta2) with limit bound C2 * delta2^s."""

    case: str
    C2: TowerReal
    delta2: TowerReal
    vacuous: bool

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "C2": self.C2.to_json(),
            "delta2": self.delta2.to_json(),
            "C2_readable": self.C2.readable(),
            "delta2_readable": self.delta2.readable(),
            "vacuous": self.vacuous,
        }


def period_envelope_constants(B: int, s: int, case: str,
                              ledger: ConstantsLedger) -> EnvelopeConstants:
    """Constants (C2, delta2) depending only on B, for one parity/threshold case.

    Large-alpha cases drop the trailing "+1" of the denominator and use
    beta = 1 + K, giving C2 = sqrt(K(1+K)) (odd) or K(1+K) (even); small-alpha
    cases use beta = 1 + 1/K with C2 = 1.  The integer-part collapse
    [log2 theta_B] = 0 (theta_B < 2 for every B >= 1) forces delta2 = 1 in
    the small-alpha cases, and log2(theta_B - 1) < 0 pushes the even-large
    delta2 above 1; both vacuities are flagged, not hidden.
    """
    if B < 1 or s < 1:
        raise ValueError("B and s must be >= 1")
    if case not in _CASES:
        raise ValueError(f"case must be one of {_CASES}, got {case!r}")
    if (s % 2 == 1) != case.startswith("odd"):
        raise ValueError(f"case {case!r} does not match parity of s = {s}")
    if ledger.B != B:
        raise ValueError("ledger B does not match requested B")
    tb = tail_growth_floor(B)
    K = ledger.K
    if case == "odd-large":
        delta2 = (1 + K) ** (-0.5 * math.log2(tb * tb - 1.0))
        C2 = (K * (1 + K)) ** 0.5
    elif case == "even-large":
        delta2 = (1 + K) ** (-math.log2(tb - 1.0))
        C2 = K * (1 + K)
    elif case == "odd-small":
        delta2 = (1 + K.reciprocal()) ** (-0.5 * math.floor(math.log2(tb)))
        C2 = TowerReal(1.0)
    else:
        delta2 = (1 + K.reciprocal()) ** (-math.floor(math.log2(tb)))
        C2 = TowerReal(1.0)
    return EnvelopeConstants(case=case, C2=C2, delta2=delta2,
                             vacuous=not delta2 < 1)
