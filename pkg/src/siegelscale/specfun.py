"""Special functions of quasiconformal distortion theory.

Complete elliptic integrals via the arithmetic-geometric mean, the
disk-modulus function mu normalized so that mu(r) = K'(r)/(4 K(r)) with
asymptote ln(4/r)/(2 pi), its inverse, the distortion function
phi_M = mu^{-1}(M mu(.)), the circular-distortion bound exp(pi M)/16, and
the induced quasisymmetry modulus for globally M-quasiconformal maps.

Results that leave native float range are returned as TowerReal values.
"""

from __future__ import annotations

import math

from .towers import TowerReal

__all__ = [
    "agm",
    "ellip_k",
    "ellip_k_prime",
    "mu",
    "mu_inv",
    "mu_inv_ln",
    "mu_inv_complement_ln",
    "phi_distortion",
    "circular_distortion_bound",
    "quasisymmetry_modulus_bound",
]

_AGM_RTOL = 1e-16
_AGM_MAX_ITER = 64
# mu_inv branch crossovers: asymptotic Newton above, dual identity below
_MU_LARGE = 1.0
_MU_SMALL = 1.0 / 16.0
# largest argument for which 4 exp(-2 pi x) stays comfortably inside floats
_MU_INV_FLOAT_LIMIT = 110.0


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of nonnegative a, b."""
    if a < 0 or b < 0:
        raise ValueError("agm requires nonnegative arguments")
    if a == 0.0 or b == 0.0:
        return 0.0
    for _ in range(_AGM_MAX_ITER):
        a1 = 0.5 * (a + b)
        b1 = math.sqrt(a * b)
        if abs(a1 - b1) <= _AGM_RTOL * a1:
            return 0.5 * (a1 + b1)
        a, b = a1, b1
    return 0.5 * (a + b)


def ellip_k(r: float) -> float:
    """Complete elliptic integral of the first kind, modulus r in [0, 1)."""
    if not 0.0 <= r < 1.0:
        raise ValueError(f"ellip_k requires 0 <= r < 1, got {r}")
    return math.pi / (2.0 * agm(1.0, math.sqrt((1.0 - r) * (1.0 + r))))


def ellip_k_prime(r: float) -> float:
    """K(sqrt(1-r^2)), computed without forming the complementary modulus."""
    if not 0.0 < r <= 1.0:
        raise ValueError(f"ellip_k_prime requires 0 < r <= 1, got {r}")
    return math.pi / (2.0 * agm(1.0, r))


def mu(r: float) -> float:
    """Modulus of the unit disk slit along [0, r]; equals K'(r)/(4 K(r)).

    Strictly decreasing on (0,1) with mu(1/sqrt(2)) = 1/4 and
    mu(r) <= ln(4/r)/(2 pi).
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"mu requires 0 < r < 1, got {r}")
    # K'/(4K) = agm(1, r') / (4 agm(1, r)) with r' the complementary modulus
    return agm(1.0, math.sqrt((1.0 - r) * (1.0 + r))) / (4.0 * agm(1.0, r))


def _mu_deriv(r: float) -> float:
    k = ellip_k(r)
    return -math.pi / (8.0 * r * (1.0 - r * r) * k * k)


def _mu_inv_large(x: float) -> float:
    """Invert mu for x >= 1 via the asymptotic seed 4 exp(-2 pi x) + Newton."""
    r = 4.0 * math.exp(-2.0 * math.pi * x)
    for _ in range(4):
        f = mu(r) - x
        r -= f / _mu_deriv(r)
    return r


def mu_inv(x: float) -> float:
    """Functional inverse of mu on (0, inf).

    Branches: Newton from the asymptotic seed for x >= 1; the dual identity
    mu(r) mu(r') = 1/16 for x <= 1/16; bisection plus Newton in between.
    For x > ~110 the result underflows native floats; use mu_inv_ln there.
    For x < ~0.02 the result is within a few ulp of 1, so quantities like
    1 - r^2 must come from mu_inv_complement_ln, not from this float.
    """
    if x <= 0.0:
        raise ValueError(f"mu_inv requires x > 0, got {x}")
    if x >= _MU_LARGE:
        if x > _MU_INV_FLOAT_LIMIT:
            raise OverflowError("mu_inv underflows floats; use mu_inv_ln")
        return _mu_inv_large(x)
    if x <= _MU_SMALL:
        rp = _mu_inv_large(1.0 / (16.0 * x))
        return math.sqrt((1.0 - rp) * (1.0 + rp))
    lo, hi = _mu_inv_large(1.0), math.sqrt(1.0 - _mu_inv_large(1.0) ** 2)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if mu(mid) > x:
            lo = mid
        else:
            hi = mid
    r = 0.5 * (lo + hi)
    for _ in range(3):
        r -= (mu(r) - x) / _mu_deriv(r)
    return r


def mu_inv_ln(x: float) -> float:
    """ln(mu_inv(x)) for large x, from the asymptotic ln 4 - 2 pi x."""
    if x < _MU_LARGE:
        raise ValueError("mu_inv_ln is the large-argument branch")
    if x <= _MU_INV_FLOAT_LIMIT:
        return math.log(mu_inv(x))
    return math.log(4.0) - 2.0 * math.pi * x


def mu_inv_complement_ln(x: float) -> float:
    """ln(1 - mu_inv(x)^2), well conditioned for small x.

    mu_inv(x) is within one ulp of 1 once x < ~0.02, so forming 1 - r^2 from
    the float inverse loses everything; the dual identity gives it directly
    as the square of the complementary root.
    """
    if not 0.0 < x <= _MU_SMALL:
        raise ValueError("complement branch requires 0 < x <= 1/16")
    return 2.0 * mu_inv_ln(1.0 / (16.0 * x))


def phi_distortion(r: float, M) -> float | TowerReal:
    """Distortion function mu^{-1}(M mu(r)) for M >= 1.

    Fixes 0 and 1, is strictly increasing, and never exceeds r.  When the
    result underflows native floats (large M), returns a TowerReal with
    ln phi = ln 4 - 2 pi M mu(r).
    """
    if isinstance(M, TowerReal):
        if M < 1:
            raise ValueError("phi_distortion requires M >= 1")
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"phi_distortion requires 0 <= r <= 1, got {r}")
        if r == 0.0 or r == 1.0:
            return float(r)
        ln_phi = TowerReal(math.log(4.0)) - 2.0 * math.pi * M * mu(r)
        return TowerReal.from_ln(ln_phi)
    if M < 1:
        raise ValueError("phi_distortion requires M >= 1")
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"phi_distortion requires 0 <= r <= 1, got {r}")
    if r == 0.0 or r == 1.0:
        return r
    if M == 1:
        return r
    y = M * mu(r)
    if y > _MU_INV_FLOAT_LIMIT:
        return TowerReal.from_ln(mu_inv_ln(y))
    return mu_inv(y)


def circular_distortion_bound(M, sharp_limit: bool = False) -> TowerReal:
    """Upper bound exp(pi M)/16 for the circular distortion of M-qc maps.

    The sharp value at M = 1 is 1; pass sharp_limit=True to use it.
    """
    M_t = M if isinstance(M, TowerReal) else TowerReal(M)
    if M_t < 1:
        raise ValueError("circular distortion needs M >= 1")
    if sharp_limit and M_t == 1:
        return TowerReal(1.0)
    ln_lam = math.pi * M_t - TowerReal(math.log(16.0))
    return TowerReal.from_ln(ln_lam)


def quasisymmetry_modulus_bound(t: float, M, sharp_limit: bool = False) -> TowerReal:
    """Modulus eta(t) = lambda(M)^{2M} max(t^M, t^{1/M}) for global M-qc maps."""
    if t < 0:
        raise ValueError("quasisymmetry modulus needs t >= 0")
    M_t = M if isinstance(M, TowerReal) else TowerReal(M)
    lam = circular_distortion_bound(M_t, sharp_limit=sharp_limit)
    if t == 0:
        return TowerReal(0.0)
    t_t = TowerReal(t)
    power = t_t ** M_t if t_t >= 1 else t_t ** M_t.reciprocal()
    return lam ** (2 * M_t) * power
