"""High-precision orbit engine for the quadratic map with a Siegel fixed point.

Iterates P(z) = e^{2 pi i theta} z (1 - z/2) from the critical point z = 1
at a few hundred bits, records the closest-return points z_{q_n}, estimates
the scaling ratio two ways, measures the accumulation directions of forward
and backward returns, reconstructs the boundary strip in the log coordinate
ln(z - 1), and estimates an empirical quasisymmetric constant of the
boundary parametrization.  A rigid-rotation control model with the same
interface supplies exact oracles.
"""

from __future__ import annotations

import bisect
import csv
import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from .contfrac import QuadraticIrrational, tail_product

__all__ = [
    "EscapeError",
    "PrecisionError",
    "AmbiguousRootError",
    "ReturnRecord",
    "ReturnSequence",
    "ScalingEstimate",
    "AngleReport",
    "StripReport",
    "iterate_returns",
    "backward_returns",
    "rotation_control_returns",
    "scaling_sequence",
    "converged_scaling",
    "return_angles",
    "strip_heights",
    "empirical_qs_constant",
    "verify_precision",
    "returns_to_csv",
]

DEFAULT_BITS = 212
DEFAULT_ESCAPE_RADIUS = 4.0
_ENVELOPE_STEPS = 256
MAX_DENSE_POINTS = 10 ** 6


class EscapeError(RuntimeError):
    """Orbit left the escape radius: precision insufficient for this depth."""

    def __init__(self, msg: str, n_failed: int, step: int):
        super().__init__(msg)
        self.n_failed = n_failed
        self.step = step


class PrecisionError(RuntimeError):
    """Recorded points not reproducible under precision doubling."""


class AmbiguousRootError(RuntimeError):
    """Backward step could not distinguish the two preimage roots."""

    def __init__(self, msg: str, step: int):
        super().__init__(msg)
        self.step = step


@dataclass(frozen=True)
class ReturnRecord:
    n: int
    q: int
    z: mp.mpc
    drift: float


@dataclass
class ReturnSequence:
    """Closest-return samples of one orbit, plus an optional dense tail."""

    cf: QuadraticIrrational
    direction: str              # "forward" | "backward" | "control"
    precision_bits: int
    escape_radius: float
    records: list[ReturnRecord]
    theta: float
    dense_z: np.ndarray | None = None      # complex128, index i holds z_{i+1}
    dense_len: int = 0

    @property
    def n_max(self) -> int:
        return self.records[-1].n

    def record(self, n: int) -> ReturnRecord:
        return self.records[n - 1]

    def dense_frac(self) -> np.ndarray:
        """Rotation angles {k theta} for the dense segment (float resolution)."""
        if self.dense_z is None:
            raise ValueError("orbit was run without keep_dense")
        k = np.arange(1, self.dense_len + 1, dtype=np.float64)
        sgn = -1.0 if self.direction == "backward" else 1.0
        return (sgn * k * self.theta) % 1.0


@dataclass(frozen=True)
class ScalingEstimate:
    n: int
    q: int
    lam_hat: complex
    lam_three: complex | None
    consistency_gap: float | None
    cauchy_diff: float | None
    valid: bool = True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "lam_hat": {"re": self.lam_hat.real, "im": self.lam_hat.imag},
            "abs_lam_hat": abs(self.lam_hat),
            "lam_three": None if self.lam_three is None else
                {"re": self.lam_three.real, "im": self.lam_three.imag},
            "abs_lam_three": None if self.lam_three is None else abs(self.lam_three),
            "consistency_gap": self.consistency_gap,
            "cauchy_diff": self.cauchy_diff,
            "valid": self.valid,
        }


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------

def _orbit_context(cf: QuadraticIrrational, precision_bits: int):
    theta = cf.to_mpf(precision_bits)
    rot = mp.expjpi(2 * theta)
    return theta, rot


def iterate_returns(cf: QuadraticIrrational,
                    n_max: int,
                    precision_bits: int = DEFAULT_BITS,
                    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                    keep_dense: bool = False,
                    extend_to: int = 0) -> ReturnSequence:
    """Forward orbit of the critical point, sampled at the return times q_n.

    The orbit aborts with EscapeError as soon as |z| exceeds escape_radius
    (the point has left the invariant boundary numerically).  With
    keep_dense the full float-resolution orbit is retained, continuing past
    q_{n_max} up to extend_to steps (capped at MAX_DENSE_POINTS) so that
    strip and quasisymmetry estimators have enough boundary samples.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    qs = cf.return_times(n_max)
    q_targets = {q: n for n, q in enumerate(qs, start=1)}
    total = max(qs[-1], extend_to if keep_dense else 0)
    total = min(total, MAX_DENSE_POINTS) if keep_dense else qs[-1]
    total = max(total, qs[-1])

    dense = np.empty(total, dtype=np.complex128) if keep_dense else None
    records: list[ReturnRecord] = []
    env_lo, env_hi = math.inf, -math.inf
    drift = 0.0

    with mp.workprec(precision_bits):
        theta, rot = _orbit_context(cf, precision_bits)
        half = mp.mpf("0.5")
        z = mp.mpc(1)
        for k in range(1, total + 1):
            z = rot * z * (1 - half * z)
            zf = complex(z)
            az = abs(zf)
            if az > escape_radius:
                n_failed = q_targets.get(k, len(records) + 1)
                raise EscapeError(
                    f"orbit left the escape radius (|z| = {az:.3g} > "
                    f"{escape_radius}) at step {k} while computing return "
                    f"n = {n_failed}: insufficient precision for this depth, "
                    f"or the radius sits below the boundary's own diameter",
                    n_failed, k)
            if k <= _ENVELOPE_STEPS:
                env_lo, env_hi = min(env_lo, az), max(env_hi, az)
            else:
                drift = max(drift, az - env_hi, env_lo - az)
            if dense is not None:
                dense[k - 1] = zf
            n = q_targets.get(k)
            if n is not None:
                if z == 1:
                    raise EscapeError(f"return point z_(q_{n}) collapsed to 1", n, k)
                records.append(ReturnRecord(n, k, z, drift))
    return ReturnSequence(cf=cf, direction="forward",
                          precision_bits=precision_bits,
                          escape_radius=escape_radius, records=records,
                          theta=float(theta), dense_z=dense,
                          dense_len=total if keep_dense else 0)


def rotation_control_returns(cf: QuadraticIrrational,
                             n_max: int,
                             precision_bits: int = DEFAULT_BITS,
                             keep_dense: bool = False,
                             extend_to: int = 0) -> ReturnSequence:
    """Rigid-rotation control: z_k = exp(2 pi i {k theta}) on the unit circle.

    Same interface as iterate_returns; the return points are evaluated from
    the exact surd remainders q_n theta - p_n, so no orbit error accumulates.
    """
    qs = cf.return_times(n_max)
    records = []
    with mp.workprec(precision_bits):
        theta = cf.to_mpf(precision_bits)
        for n, q in enumerate(qs, start=1):
            delta = cf.signed_remainder(n).to_mpf(precision_bits)
            records.append(ReturnRecord(n, q, mp.expjpi(2 * delta), 0.0))
    dense = None
    total = 0
    if keep_dense:
        total = min(max(qs[-1], extend_to), MAX_DENSE_POINTS)
        k = np.arange(1, total + 1, dtype=np.float64)
        fr = (k * float(theta)) % 1.0
        dense = np.exp(2j * np.pi * fr)
    return ReturnSequence(cf=cf, direction="control",
                          precision_bits=precision_bits,
                          escape_radius=math.inf, records=records,
                          theta=float(theta), dense_z=dense, dense_len=total)


def backward_returns(cf: QuadraticIrrational,
                     n_max: int,
                     precision_bits: int = DEFAULT_BITS,
                     escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                     predictor_depth: int = 4) -> ReturnSequence:
    """Backward orbit on the boundary via the quadratic inverse.

    Each step inverts P through z = 1 +/- sqrt(1 - 2 w e^{-2 pi i theta});
    the root is chosen by proximity to the boundary position predicted from
    a forward-orbit table indexed by rotation angle (the angle of the next
    backward point is the current one rotated by -theta).  The two roots are
    symmetric about 1, so a prediction error must approach half their gap
    before the selection can flip; the margin is monitored and an
    AmbiguousRootError raised when the guard fails.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    qs = cf.return_times(n_max)
    q_targets = {q: n for n, q in enumerate(qs, start=1)}
    n_pred = cf.return_times(n_max + predictor_depth)[-1]
    n_pred = min(n_pred, MAX_DENSE_POINTS)

    records = []
    with mp.workprec(precision_bits):
        theta, rot = _orbit_context(cf, precision_bits)
        irot = mp.conj(rot)
        half = mp.mpf("0.5")
        thf = float(theta)
        # forward table (angle sorted) for prediction
        z = mp.mpc(1)
        table = [(0.0, 1.0 + 0.0j)]
        for k in range(1, n_pred + 1):
            z = rot * z * (1 - half * z)
            table.append((float(mp.frac(k * theta)), complex(z)))
            if abs(table[-1][1]) > escape_radius:
                raise EscapeError("predictor table escaped", 0, k)
        table.sort()
        angles = [a for a, _ in table]
        points = [p for _, p in table]
        m = len(table)

        def predict(target: float) -> complex:
            i = bisect.bisect_left(angles, target)
            best, best_d = None, math.inf
            for j in (i - 1, i % m, (i + 1) % m):
                d = abs(angles[j] - target)
                d = min(d, 1.0 - d)
                if d < best_d:
                    best, best_d = points[j], d
            return best

        w = mp.mpc(1)
        for k in range(1, qs[-1] + 1):
            root_shift = mp.sqrt(1 - 2 * irot * w)
            r_plus, r_minus = 1 + root_shift, 1 - root_shift
            gap = abs(complex(r_plus - r_minus))
            if gap < 1e-3 * abs(complex(w - 1)):
                raise AmbiguousRootError(
                    f"preimage roots separated by {gap:.3g}, below the "
                    f"resolution guard at backward step {k}", k)
            target = (-k * thf) % 1.0
            pred = predict(target)
            d_plus = abs(complex(r_plus) - pred)
            d_minus = abs(complex(r_minus) - pred)
            if abs(d_plus - d_minus) < 0.05 * gap:
                raise AmbiguousRootError(
                    f"predictor does not separate the preimage roots at "
                    f"backward step {k} (margin {abs(d_plus - d_minus) / gap:.3g})", k)
            w = r_plus if d_plus < d_minus else r_minus
            if abs(complex(w)) > escape_radius:
                raise EscapeError("backward orbit escaped", q_targets.get(k, 0), k)
            n = q_targets.get(k)
            if n is not None:
                records.append(ReturnRecord(n, k, w, 0.0))
    return ReturnSequence(cf=cf, direction="backward",
                          precision_bits=precision_bits,
                          escape_radius=escape_radius, records=records,
                          theta=float(theta))


def verify_precision(seq: ReturnSequence, rtol: float = 1e-10) -> float:
    """Re-run at doubled precision; reject if any return moved by > rtol.

    Returns the worst relative deviation.  This is the reproducibility gate:
    a drifting orbit is not a boundary orbit.
    """
    if seq.direction == "control":
        return 0.0
    runner = iterate_returns if seq.direction == "forward" else backward_returns
    redo = runner(seq.cf, seq.n_max, precision_bits=2 * seq.precision_bits,
                  escape_radius=seq.escape_radius)
    worst = 0.0
    with mp.workprec(2 * seq.precision_bits):
        for a, b in zip(seq.records, redo.records):
            dev = float(abs(a.z - b.z) / abs(b.z))
            worst = max(worst, dev)
    if worst > rtol:
        raise PrecisionError(
            f"returns moved by {worst:.3e} (> {rtol:.0e}) under precision "
            f"doubling; increase precision_bits")
    return worst


# ---------------------------------------------------------------------------
# scaling estimates
# ---------------------------------------------------------------------------

def scaling_sequence(seq: ReturnSequence, s: int | None = None) -> list[ScalingEstimate]:
    """Scaling estimates lam_hat_n = (z_{q_{n+s}}-1)/(z_{q_n}-1) and the
    three-point form (z_{q_{n+s}}-z_{q_n})/(z_{q_n}-z_{q_{n-s}}).

    For odd s the self-similarity is anticonformal, so the denominators are
    conjugated in both forms; without that the estimates cycle instead of
    converging.  Entries whose denominator sits at the precision floor are
    flagged invalid and carry no value.
    """
    if s is None:
        s = seq.cf.s
    if seq.n_max < s + 1:
        raise ValueError(f"need at least {s + 1} returns, have {seq.n_max}")
    conj = (s % 2 == 1)
    floor = 10.0 * 2.0 ** (-seq.precision_bits)
    out: list[ScalingEstimate] = []
    prev_three: complex | None = None
    with mp.workprec(seq.precision_bits):
        w = [None] + [rec.z - 1 for rec in seq.records]
        for n in range(1, seq.n_max - s + 1):
            den = mp.conj(w[n]) if conj else w[n]
            if abs(den) < floor:
                out.append(ScalingEstimate(n, seq.records[n - 1].q, 0j, None,
                                           None, None, valid=False))
                continue
            lam_hat = complex((w[n + s] - 0) / den)
            lam_three = None
            gap = None
            cauchy = None
            if n - s >= 1:
                den3 = w[n] - w[n - s]
                den3 = mp.conj(den3) if conj else den3
                if abs(den3) >= floor:
                    lam_three = complex((w[n + s] - w[n]) / den3)
                    gap = abs(lam_three - lam_hat)
                    if prev_three is not None:
                        cauchy = abs(lam_three - prev_three)
                    prev_three = lam_three
            out.append(ScalingEstimate(n, seq.records[n - 1].q, lam_hat,
                                       lam_three, gap, cauchy))
    return out


def converged_scaling(estimates: list[ScalingEstimate]) -> complex:
    """Last valid lam_hat: the working value of the scaling ratio."""
    for est in reversed(estimates):
        if est.valid:
            return est.lam_hat
    raise ValueError("no valid scaling estimates")


# ---------------------------------------------------------------------------
# return-line directions
# ---------------------------------------------------------------------------

def _aitken(series: list[float]) -> tuple[float, float]:
    """Aitken-accelerated limit of a geometric-ish series, with an error bar
    given by the magnitude of the last correction."""
    if len(series) < 3:
        return series[-1], abs(series[-1] - series[0]) if len(series) > 1 else math.nan
    acc = series[-1]
    err = abs(series[-1] - series[-2])
    for i in (len(series) - 3, len(series) - 2):
        if i + 2 >= len(series) or i < 0:
            continue
        d2 = series[i + 2] - 2 * series[i + 1] + series[i]
        if d2 != 0.0:
            new = series[i + 2] - (series[i + 2] - series[i + 1]) ** 2 / d2
            err = abs(new - acc)
            acc = new
    return acc, err


def _parity_directions(seq: ReturnSequence, tail: int = 8) -> dict[int, tuple[float, float, list[float]]]:
    dirs: dict[int, list[float]] = {0: [], 1: []}
    with mp.workprec(seq.precision_bits):
        for rec in seq.records:
            ang = float(mp.arg(rec.z - 1))
            dirs[rec.n % 2].append(ang)
    out = {}
    for par, series in dirs.items():
        series = np.unwrap(np.array(series)).tolist()
        use = series[-min(tail, len(series)):]
        limit, err = _aitken(use)
        out[par] = (limit, err, series)
    return out


@dataclass
class AngleReport:
    """Accumulation directions of the closest returns, split by parity."""

    forward_directions_deg: tuple[float, float]
    backward_directions_deg: tuple[float, float]
    forward_separation_deg: float
    backward_separation_deg: float
    forward_error_deg: float
    backward_error_deg: float
    gamma_min_rad: float | None = None
    gamma_max_rad: float | None = None
    gamma_err_rad: float | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "forward_directions_deg": list(self.forward_directions_deg),
            "backward_directions_deg": list(self.backward_directions_deg),
            "forward_separation_deg": self.forward_separation_deg,
            "backward_separation_deg": self.backward_separation_deg,
            "forward_error_deg": self.forward_error_deg,
            "backward_error_deg": self.backward_error_deg,
            "gamma_min_rad": self.gamma_min_rad,
            "gamma_max_rad": self.gamma_max_rad,
            "gamma_err_rad": self.gamma_err_rad,
            "diagnostics": self.diagnostics,
        }


def _fold_separation(a_deg: float, b_deg: float) -> float:
    sep = abs(a_deg - b_deg) % 360.0
    return 360.0 - sep if sep > 180.0 else sep


def return_angles(fwd: ReturnSequence, bwd: ReturnSequence) -> AngleReport:
    """Angles between the two parity accumulation lines, forward and backward.

    Directions arg(z_{q_n} - 1) converge geometrically along each parity
    class; the limits are Aitken-extrapolated and the error bar is the last
    extrapolation correction.
    """
    if fwd.n_max < 6 or bwd.n_max < 6:
        raise ValueError("need at least 6 returns in each direction")
    f = _parity_directions(fwd)
    b = _parity_directions(bwd)
    f_deg = tuple(math.degrees(f[p][0]) for p in (0, 1))
    b_deg = tuple(math.degrees(b[p][0]) for p in (0, 1))
    f_err = math.degrees(f[0][1] + f[1][1])
    b_err = math.degrees(b[0][1] + b[1][1])
    return AngleReport(
        forward_directions_deg=f_deg,
        backward_directions_deg=b_deg,
        forward_separation_deg=_fold_separation(*f_deg),
        backward_separation_deg=_fold_separation(*b_deg),
        forward_error_deg=f_err,
        backward_error_deg=b_err,
        diagnostics={
            "forward_series_deg": [[math.degrees(v) for v in f[p][2]] for p in (0, 1)],
            "backward_series_deg": [[math.degrees(v) for v in b[p][2]] for p in (0, 1)],
        },
    )


# ---------------------------------------------------------------------------
# strip geometry in the log coordinate
# ---------------------------------------------------------------------------

@dataclass
class StripReport:
    gamma_min_rad: float
    gamma_max_rad: float
    gamma_min_err: float
    gamma_max_err: float
    fundamental_width: float
    n_window_points: int
    window_radius: float
    domains: list[dict]

    def to_json(self) -> dict:
        return {
            "gamma_min_rad": self.gamma_min_rad,
            "gamma_max_rad": self.gamma_max_rad,
            "gamma_min_deg": math.degrees(self.gamma_min_rad),
            "gamma_max_deg": math.degrees(self.gamma_max_rad),
            "gamma_min_err": self.gamma_min_err,
            "gamma_max_err": self.gamma_max_err,
            "fundamental_width": self.fundamental_width,
            "n_window_points": self.n_window_points,
            "window_radius": self.window_radius,
            "domains": self.domains,
        }


def strip_heights(seq: ReturnSequence,
                  lambda_abs: float | None = None,
                  window_radius: float = 0.5,
                  min_points: int = 10_000,
                  bins_per_width: int = 6,
                  min_bin_points: int = 4) -> StripReport:
    """Vertical extent of the boundary strip in the coordinate ln(z - 1).

    Window points (|z - 1| < window_radius) are split into the two boundary
    strands by their rotation angle ({k theta} below or above 1/2), binned
    by Re ln(z - 1) in bins of one sixth of the fundamental width
    |ln lambda^2|, and each bin contributes the least and greatest vertical
    gap between the strands.  Per-domain aggregates are extrapolated
    linearly over the last qualifying domains (Re w -> -infinity); the error
    bar is the extrapolation step.  Bins too sparse to see both strands are
    dropped, so the estimates are inner approximations of the true extents.
    """
    if seq.dense_z is None:
        raise ValueError("strip_heights needs a dense orbit (keep_dense=True)")
    z = seq.dense_z[:seq.dense_len]
    fr = seq.dense_frac()
    mask = np.abs(z - 1.0) < window_radius
    if int(mask.sum()) < min_points:
        raise ValueError(
            f"insufficient window density: {int(mask.sum())} points with "
            f"|z-1| < {window_radius}, need {min_points}; extend the orbit")
    zw, fw = z[mask], fr[mask]
    # log coordinate with the branch cut away from the strip: arg(1 - z)
    w = np.log(1.0 - zw)
    x, y = w.real, w.imag
    side = fw < 0.5
    if y[side].mean() < y[~side].mean():
        side = ~side
    if lambda_abs is None:
        lam = converged_scaling(scaling_sequence(seq))
        lambda_abs = abs(lam)
    width = abs(math.log(lambda_abs * lambda_abs))
    bin_w = width / bins_per_width
    x_hi = float(x.max())
    n_bins = int((x_hi - float(x.min())) / bin_w)
    domains: list[dict] = []
    for j in range(n_bins // bins_per_width):
        d_hi = x_hi - j * width
        g_min, g_max = math.inf, -math.inf
        n_ok = 0
        n_pts = 0
        for b in range(bins_per_width):
            hi = d_hi - b * bin_w
            lo = hi - bin_w
            m = (x >= lo) & (x < hi)
            yu, yl = y[m & side], y[m & ~side]
            n_pts += int(m.sum())
            if len(yu) < min_bin_points or len(yl) < min_bin_points:
                continue
            n_ok += 1
            g_min = min(g_min, float(yu.min() - yl.max()))
            g_max = max(g_max, float(yu.max() - yl.min()))
        if n_ok >= bins_per_width // 2:
            domains.append({"domain": j, "x_hi": d_hi, "n_points": n_pts,
                            "n_bins_ok": n_ok, "gamma_min": g_min,
                            "gamma_max": g_max})
    # skip the shallowest domain (window-edge effects), need two more
    usable = domains[1:]
    if len(usable) < 2:
        raise ValueError("insufficient density: fewer than 3 qualifying domains")
    gmin_series = [d["gamma_min"] for d in usable]
    gmax_series = [d["gamma_max"] for d in usable]
    # sampled extremes are inner bounds of the true strip, so the linear
    # trend over domains is applied only where it widens the interval
    step_min = gmin_series[-1] - gmin_series[-2]
    step_max = gmax_series[-1] - gmax_series[-2]
    gamma_min = min(gmin_series) + min(step_min, 0.0)
    gamma_max = max(gmax_series) + max(step_max, 0.0)
    spread_min = (max(gmin_series) - min(gmin_series)) / 2
    spread_max = (max(gmax_series) - min(gmax_series)) / 2
    return StripReport(
        gamma_min_rad=gamma_min,
        gamma_max_rad=min(gamma_max, math.pi),
        gamma_min_err=abs(step_min) + spread_min,
        gamma_max_err=abs(step_max) + spread_max,
        fundamental_width=width,
        n_window_points=int(mask.sum()),
        window_radius=window_radius,
        domains=domains,
    )


# ---------------------------------------------------------------------------
# empirical quasisymmetric constant
# ---------------------------------------------------------------------------

def empirical_qs_constant(seq: ReturnSequence,
                          n_centers: int = 400,
                          n_scales: int = 6,
                          seed: int = 7) -> tuple[float, dict[int, float]]:
    """Distortion of symmetric rotation triples by the boundary parametrization.

    The boundary point at angle {k theta} is z_k, so (z_{n-q_j}, z_n,
    z_{n+q_j}) is an exactly symmetric triple at scale |q_j theta - p_j|.
    Returns the max over sampled centers and return scales of
    max(ratio, 1/ratio) of the image chord lengths, plus the per-scale max.
    """
    if seq.dense_z is None:
        raise ValueError("empirical_qs_constant needs a dense orbit")
    import random
    rng = random.Random(seed)
    z = seq.dense_z[:seq.dense_len]
    n_len = seq.dense_len
    qs = [q for q in seq.cf.return_times(40) if q < n_len // 3]
    qs = qs[-n_scales:] if len(qs) > n_scales else qs
    per_scale: dict[int, float] = {}
    worst = 1.0
    for q in qs:
        k_worst = 1.0
        for _ in range(n_centers):
            n = rng.randrange(q, n_len - q)
            a, b, c = z[n - q], z[n], z[n + q]
            d1, d2 = abs(c - b), abs(b - a)
            if d1 < 1e-12 or d2 < 1e-12:
                continue
            r = d1 / d2
            k_worst = max(k_worst, r, 1.0 / r)
        per_scale[q] = k_worst
        worst = max(worst, k_worst)
    return worst, per_scale


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def returns_to_csv(seq: ReturnSequence, path: str, digits: int = 30) -> None:
    """Dump (n, q_n, Re z, Im z, |z-1|, arg(z-1)) at full working precision."""
    with mp.workprec(seq.precision_bits), open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "q", "re_z", "im_z", "abs_z_minus_1", "arg_z_minus_1"])
        for rec in seq.records:
            w = rec.z - 1
            writer.writerow([
                rec.n, rec.q,
                mp.nstr(rec.z.real, digits), mp.nstr(rec.z.imag, digits),
                mp.nstr(abs(w), digits), mp.nstr(mp.arg(w), digits),
            ])
