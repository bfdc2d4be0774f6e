"""Circle model: degree-2 Blaschke product restricted to the unit circle.

Q_t(z) = e^{2 pi i t} z^2 (z - 3)/(1 - 3 z) preserves the unit circle and
restricts to a critical circle homeomorphism with a cubic critical point at
z = 1.  This module evaluates its degree-1 lift in closed form, computes
rotation numbers with certified enclosures, solves t for a prescribed
rotation number by bisection against exact convergent sign tests, and
measures cross-ratio moduli of quadrilaterals under the lift: the
cross-ratio-inequality verifier, interval commensurability, and the
covering-multiplicity bound live here.
"""

from __future__ import annotations

import cmath
import csv
import math
import random
from dataclasses import dataclass, field

from .contfrac import QuadraticIrrational
from .specfun import ellip_k, ellip_k_prime

__all__ = [
    "CircleLift",
    "RigidLift",
    "rotation_number",
    "solve_t",
    "SolveTResult",
    "cross_ratio",
    "chi_modulus",
    "Quadruple",
    "validate_configuration",
    "intersection_number",
    "sample_allowable_configuration",
    "xratio_inequality_check",
    "XRatioResult",
    "crossratio_product_bound",
    "commensurability_check",
    "CommensurabilityReport",
    "lift_to_csv",
]


@dataclass(frozen=True)
class CircleLift:
    """Continuous increasing lift g of Q_t restricted to the circle.

    g(x + 1) = g(x) + 1 and g'(x) = 0 exactly at the integers (the cubic
    critical point z = 1).  The continuous argument branch is closed form:
    the Moebius factor (z-3)/(1-3z) crosses -1 only at z = -1, so its
    principal argument is continuous for x in (-1/2, 1/2) and unwrapping
    reduces to the integer fold.
    """

    t: float

    def __call__(self, x: float) -> float:
        n = math.floor(x + 0.5)
        y = x - n
        z = cmath.exp(2j * math.pi * y)
        h = (z - 3.0) / (1.0 - 3.0 * z)
        return self.t + 2.0 * x - n + math.atan2(h.imag, h.real) / (2.0 * math.pi)

    def deriv(self, x: float) -> float:
        z = cmath.exp(2j * math.pi * (x - math.floor(x + 0.5)))
        v = -8.0 * z / ((1.0 - 3.0 * z) * (z - 3.0))
        return 2.0 + v.real

    def iterate(self, x: float, n: int) -> float:
        for _ in range(n):
            x = self(x)
        return x

    def inverse(self, y: float) -> float:
        """Monotone inversion by bisection (the cubic flat spot excludes Newton)."""
        lo, hi = y - 2.0, y + 2.0
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            if self(mid) < y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def iterate_back(self, x: float, n: int) -> float:
        for _ in range(n):
            x = self.inverse(x)
        return x


@dataclass(frozen=True)
class RigidLift:
    """Lift of the rigid rotation, x -> x + theta; exact oracle."""

    theta: float

    def __call__(self, x: float) -> float:
        return x + self.theta

    def deriv(self, x: float) -> float:
        return 1.0

    def iterate(self, x: float, n: int) -> float:
        return x + n * self.theta

    def inverse(self, y: float) -> float:
        return y - self.theta

    def iterate_back(self, x: float, n: int) -> float:
        return x - n * self.theta


def rotation_number(lift, n_iter: int = 10_000, x0: float = 0.0) -> tuple[float, float]:
    """Birkhoff estimate (g^n(x0) - x0)/n with certified enclosure radius 1/n.

    For a degree-1 lift of a circle homeomorphism, |g^n(x) - x - n rho| < 1,
    so the true rotation number lies within 1/n of the estimate.
    """
    if n_iter < 1:
        raise ValueError("n_iter must be >= 1")
    x = lift.iterate(x0, n_iter)
    return (x - x0) / n_iter, 1.0 / n_iter


def _side_of(lift, p: int, q: int, x0: float = 0.31830988618) -> int:
    """Sign of g^q(x0) - x0 - p: +1 certifies rho >= p/q, -1 certifies <= p/q."""
    v = lift.iterate(x0, q) - x0 - p
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class SolveTResult:
    t: float
    rho_lo: tuple[int, int]     # certified p/q below the target
    rho_hi: tuple[int, int]     # certified p/q above the target
    residual_bound: float
    bisections: int
    lift_evals: int

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "rho_lo": f"{self.rho_lo[0]}/{self.rho_lo[1]}",
            "rho_hi": f"{self.rho_hi[0]}/{self.rho_hi[1]}",
            "residual_bound": self.residual_bound,
            "bisections": self.bisections,
            "lift_evals": self.lift_evals,
        }


def solve_t(cf: QuadraticIrrational, tol: float = 1e-8,
            max_bisections: int = 400) -> SolveTResult:
    """Parameter t with rotation number of Q_t within tol of the target.

    Bisection on t in [0, 1] steered by one-point sign tests against the
    exact convergents of the target: g^q(x) - x - p has one sign on the
    whole line whenever rho != p/q, so a single evaluation gives a certified
    side.  Levels are sharpened progressively; on success the rotation
    number is certified inside consecutive convergents whose gap is <= tol.
    """
    if tol < 1e-10:
        raise ValueError("tol below certification resolution 1e-10")
    convs = []
    n = 1
    while True:
        convs = cf.convergents(n + 1)
        gap = 1.0 / (convs[-1].q * convs[-2].q)
        if gap <= tol:
            break
        n += 1
        if n > 120:
            raise RuntimeError("convergent gap did not reach tol")
    # consecutive convergent pairs straddle the target; order each pair
    levels = []
    theta = float(cf.value())
    for m in range(1, len(convs)):
        lo, hi = convs[m - 1], convs[m]
        if lo.p / lo.q > theta:
            lo, hi = hi, lo
        levels.append(((lo.p, lo.q), (hi.p, hi.q)))
    levels = levels[2:] if len(levels) > 3 else levels  # skip the coarsest

    t_lo, t_hi = 0.0, 1.0
    level = 0
    evals = 0
    for it in range(max_bisections):
        mid = 0.5 * (t_lo + t_hi)
        lift = CircleLift(mid)
        (p_lo, q_lo), (p_hi, q_hi) = levels[level]
        if _side_of(lift, p_lo, q_lo) < 0:
            t_lo = mid
            evals += q_lo
            continue
        evals += q_lo
        if _side_of(lift, p_hi, q_hi) > 0:
            t_hi = mid
            evals += q_hi
            continue
        evals += q_hi
        # rho(mid) certified inside [p_lo/q_lo, p_hi/q_hi]
        if level == len(levels) - 1:
            return SolveTResult(
                t=mid,
                rho_lo=(p_lo, q_lo),
                rho_hi=(p_hi, q_hi),
                residual_bound=p_hi / q_hi - p_lo / q_lo,
                bisections=it + 1,
                lift_evals=evals,
            )
        level += 1
    raise RuntimeError(f"bisection budget {max_bisections} exhausted at level {level}")


# ---------------------------------------------------------------------------
# cross-ratio moduli
# ---------------------------------------------------------------------------

Quadruple = tuple[float, float, float, float]


def cross_ratio(a: float, b: float, c: float, d: float) -> float:
    """|a-b| |c-d| / (|a-c| |d-b|) for a <= b <= c <= d; lies in [0, 1]."""
    if not (a <= b <= c <= d):
        raise ValueError("quadruple must satisfy a <= b <= c <= d")
    if a == b or c == d:
        return 0.0
    return ((b - a) * (d - c)) / ((c - a) * (d - b))


def chi_modulus(a: float, b: float, c: float, d: float) -> float:
    """Reciprocal modulus of the half-plane quadrilateral with base (a, b).

    A real Moebius map takes the quadruple to the symmetric position
    (-1/k, -1, 1, 1/k) with k = (1 - sqrt(Cr))/(1 + sqrt(Cr)); the elliptic
    rectangle map of the half plane then gives modulus 2K(k)/K'(k), so
    chi = K'(k) / (2 K(k)).  Degenerate base or top (a = b or c = d) gives
    0; collapsing middle (b = c) diverges.
    """
    cr = cross_ratio(a, b, c, d)
    if cr == 0.0:
        return 0.0
    if cr >= 1.0:
        return math.inf
    sq = math.sqrt(cr)
    k = (1.0 - sq) / (1.0 + sq)
    if k == 0.0:
        return math.inf
    return ellip_k_prime(k) / (2.0 * ellip_k(k))


def validate_configuration(quads: list[Quadruple]) -> None:
    """Check an allowable configuration: ordered quadruples, spans < 1,
    intervals (a_i, d_i) pairwise disjoint modulo 1."""
    arcs = []
    for (a, b, c, d) in quads:
        if not (a <= b <= c <= d):
            raise ValueError("quadruple not ordered")
        if not d - a < 1.0:
            raise ValueError("quadruple spans >= 1")
        arcs.append((a % 1.0, d - a))
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            s1, l1 = arcs[i]
            s2, l2 = arcs[j]
            gap = (s2 - s1) % 1.0
            if gap < l1 or (1.0 - gap) % 1.0 < l2:
                if not (l1 == 0.0 or l2 == 0.0):
                    raise ValueError("intervals overlap modulo 1")


def intersection_number(quads: list[Quadruple]) -> int:
    """Largest multiplicity with which a point is covered modulo 1."""
    events = []
    for (a, _, _, d) in quads:
        s = a % 1.0
        ln = d - a
        if ln >= 1.0:
            return len(quads)
        e = s + ln
        if e <= 1.0:
            events.append((s, 1))
            events.append((e, -1))
        else:
            events.append((s, 1))
            events.append((1.0, -1))
            events.append((0.0, 1))
            events.append((e - 1.0, -1))
    events.sort(key=lambda p: (p[0], -p[1]))
    depth = best = 0
    for _, delta in events:
        depth += delta
        best = max(best, depth)
    return best


def crossratio_product_bound(Q: float, k: int) -> float:
    """Bound Q^{2k} for configurations with intersection number k."""
    if k < 0:
        raise ValueError("intersection number must be >= 0")
    return Q ** (2 * k)


def sample_allowable_configuration(rng: random.Random,
                                   n_quadruples: int = 4,
                                   span: float = 0.8,
                                   include_critical: bool = True,
                                   max_interval: float = 0.2) -> list[Quadruple]:
    """Seeded rejection-free sampler of disjoint quadruples modulo 1.

    Lengths and gaps are drawn then rescaled into a window of total measure
    ``span``; with include_critical the first interval is recentred to
    straddle the critical point at 0.
    """
    if n_quadruples < 1:
        raise ValueError("need at least one quadruple")
    lengths = [rng.uniform(0.2, 1.0) for _ in range(n_quadruples)]
    gaps = [rng.uniform(0.2, 1.0) for _ in range(n_quadruples)]
    scale = span / (sum(lengths) + sum(gaps))
    lengths = [min(l * scale, max_interval) for l in lengths]
    gaps = [g * scale for g in gaps]
    quads = []
    pos = rng.uniform(0.0, 0.1)
    for i in range(n_quadruples):
        a = pos
        d = a + lengths[i]
        b = a + lengths[i] * rng.uniform(0.15, 0.45)
        c = a + lengths[i] * rng.uniform(0.55, 0.85)
        quads.append((a, b, c, d))
        pos = d + gaps[i]
    if include_critical:
        a, b, c, d = quads[0]
        shift = -0.5 * (a + d)  # recentre the first interval across 0
        quads[0] = (a + shift, b + shift, c + shift, d + shift)
    validate_configuration(quads)
    return quads


@dataclass
class XRatioResult:
    product: float
    passed: bool
    bound: float
    ratios: list[float]
    skipped: int

    def to_json(self) -> dict:
        return {
            "product": self.product,
            "passed": self.passed,
            "bound": self.bound,
            "ratios": self.ratios,
            "skipped": self.skipped,
        }


def xratio_inequality_check(lift, quads: list[Quadruple],
                            bound: float = 8.0,
                            slack: float = 1e-6) -> XRatioResult:
    """Product of chi(g(quadruple))/chi(quadruple) over an allowable
    configuration, compared against the stated bound."""
    validate_configuration(quads)
    product = 1.0
    ratios = []
    skipped = 0
    for (a, b, c, d) in quads:
        chi_src = chi_modulus(a, b, c, d)
        if chi_src == 0.0 or math.isinf(chi_src):
            skipped += 1
            continue
        ga, gb, gc, gd = lift(a), lift(b), lift(c), lift(d)
        chi_img = chi_modulus(ga, gb, gc, gd)
        ratios.append(chi_img / chi_src)
        product *= ratios[-1]
    return XRatioResult(product=product,
                        passed=product <= bound * (1.0 + slack),
                        bound=bound, ratios=ratios, skipped=skipped)


# ---------------------------------------------------------------------------
# commensurability of forward and backward returns
# ---------------------------------------------------------------------------

@dataclass
class CommensurabilityReport:
    n: int
    q: int
    p: int
    max_ratio: float
    sign_consistent: bool
    samples: list[dict]

    def to_json(self) -> dict:
        return {
            "n": self.n, "q": self.q, "p": self.p,
            "max_ratio": self.max_ratio,
            "sign_consistent": self.sign_consistent,
            "samples": self.samples,
        }


def commensurability_check(lift, cf: QuadraticIrrational, n: int,
                           x_samples: list[float]) -> CommensurabilityReport:
    """Measure |g^{q_n}(x) - p_n - x| against |g^{-q_n}(x) + p_n - x|.

    The two are comparable with a uniform constant; the report carries the
    worst two-sided ratio over the samples and the sign consistency of
    (g^{q_n}(x) - x - p_n) with q_n theta - p_n.
    """
    conv = cf.convergents(n)[-1]
    p, q = conv.p, conv.q
    rem_sign = cf.signed_remainder(n).sign()
    max_ratio = 1.0
    sign_ok = True
    samples = []
    for x in x_samples:
        fwd = lift.iterate(x, q) - p - x
        bwd = lift.iterate_back(x, q) + p - x
        if fwd == 0.0 or bwd == 0.0:
            raise ZeroDivisionError("degenerate return displacement")
        ratio = abs(bwd) / abs(fwd)
        max_ratio = max(max_ratio, ratio, 1.0 / ratio)
        ok = (fwd > 0) == (rem_sign > 0)
        sign_ok = sign_ok and ok
        samples.append({"x": x, "fwd": fwd, "bwd": bwd, "ratio": ratio,
                        "sign_ok": ok})
    return CommensurabilityReport(n=n, q=q, p=p, max_ratio=max_ratio,
                                  sign_consistent=sign_ok, samples=samples)


def lift_to_csv(lift, path: str, n_points: int = 512) -> None:
    """Dump (x, g(x)) samples over one period."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "g_x"])
        for i in range(n_points + 1):
            x = i / n_points
            writer.writerow([x, lift(x)])
