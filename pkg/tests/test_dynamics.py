"""Orbit engine: returns, scaling estimates, angles, strips, quasisymmetry."""

import math

import mpmath as mp
import numpy as np
import pytest

from siegelscale.contfrac import parse_rotation_number, tail_product
from siegelscale.dynamics import (
    AmbiguousRootError,
    EscapeError,
    PrecisionError,
    backward_returns,
    converged_scaling,
    empirical_qs_constant,
    iterate_returns,
    return_angles,
    returns_to_csv,
    rotation_control_returns,
    scaling_sequence,
    strip_heights,
    verify_precision,
)
from siegelscale.bounds import qs_interval_bounds

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def test_returns_decrease_geometrically(golden_fwd):
    with mp.workprec(golden_fwd.precision_bits):
        dists = [float(abs(rec.z - 1)) for rec in golden_fwd.records]
    assert all(dists[i + 1] < dists[i] for i in range(len(dists) - 1))
    # decrease rate approaches |lambda| ~ 0.742
    rate = dists[-1] / dists[-2]
    assert rate == pytest.approx(0.742, abs=0.01)


def test_returns_record_structure(golden_fwd):
    qs = parse_rotation_number(";1").return_times(20)
    assert [rec.q for rec in golden_fwd.records] == qs
    assert all(rec.drift < 1e-9 for rec in golden_fwd.records)


def test_five_bar_runs_within_budget():
    cf = parse_rotation_number(";5")
    seq = iterate_returns(cf, 6)
    assert seq.records[-1].q == cf.return_times(6)[-1]
    growth = seq.records[-1].q ** (1 / 6)
    assert growth == pytest.approx((5 + math.sqrt(29)) / 2, rel=0.02)


def test_escape_aborts_with_context(golden):
    with pytest.raises(EscapeError) as exc:
        iterate_returns(golden, 8, escape_radius=1.01)
    assert exc.value.step >= 1
    assert "insufficient precision" in str(exc.value)


def test_precision_floor_rejected(golden):
    with pytest.raises(ValueError):
        iterate_returns(golden, 4, precision_bits=32)


def test_scaling_convergence_and_consistency(golden_fwd):
    ests = scaling_sequence(golden_fwd)
    lam = converged_scaling(ests)
    alpha = float(tail_product(parse_rotation_number(";1")))
    assert alpha < abs(lam) < 1.0
    assert abs(lam) == pytest.approx(0.7419, abs=5e-4)
    gaps = [e.consistency_gap for e in ests if e.consistency_gap is not None]
    assert all(gaps[i + 1] < gaps[i] for i in range(len(gaps) - 5, len(gaps) - 1))
    assert gaps[-1] < 1e-3


def test_scaling_without_conjugation_cycles(golden_fwd):
    # regression for the anticonformal parity: the raw ratio 2-cycles
    with mp.workprec(golden_fwd.precision_bits):
        w = [rec.z - 1 for rec in golden_fwd.records]
        raw = [complex(w[n + 1] / w[n]) for n in range(10, 18)]
    raw_diffs = [abs(raw[i + 1] - raw[i]) for i in range(len(raw) - 1)]
    assert min(raw_diffs) > 0.1      # does not settle
    args = [math.atan2(r.imag, r.real) for r in raw]
    assert abs(args[0] - args[2]) < 0.05 and abs(args[1] - args[3]) < 0.05


def test_control_model_scaling(golden_control):
    ests = scaling_sequence(golden_control)
    alpha = float(tail_product(parse_rotation_number(";1")))
    assert abs(abs(converged_scaling(ests)) - alpha) < 1e-6


def test_control_identity_surd_exact(golden):
    alpha = tail_product(golden)
    for n in range(1, 8):
        assert golden.signed_remainder(n + 1) == alpha * golden.signed_remainder(n) * (-1)


def test_backward_first_step_exact(golden):
    # the preimage of the critical value is the critical point (double root)
    with mp.workprec(212):
        theta = golden.to_mpf(212)
        rot = mp.expjpi(2 * theta)
        z1 = rot * (1 - mp.mpf(1) / 2)
        root = mp.sqrt(1 - 2 * mp.conj(rot) * z1)
        assert float(abs(root)) < 1e-30


def test_backward_returns_decrease(golden_bwd):
    with mp.workprec(golden_bwd.precision_bits):
        dists = [float(abs(rec.z - 1)) for rec in golden_bwd.records]
    assert all(dists[i + 1] < dists[i] for i in range(len(dists) - 1))
    rate = dists[-1] / dists[-2]
    assert rate == pytest.approx(0.742, abs=0.02)


def test_return_angles_match_reference(golden_fwd, golden_bwd):
    rep = return_angles(golden_fwd, golden_bwd)
    assert rep.forward_separation_deg == pytest.approx(107.2, abs=0.5)
    assert rep.backward_separation_deg == pytest.approx(119.6, abs=0.5)
    assert 0 < rep.forward_separation_deg < 180
    assert rep.forward_error_deg < 0.1
    assert rep.backward_error_deg < 0.2


def test_return_angles_needs_depth(golden):
    short = iterate_returns(golden, 4)
    with pytest.raises(ValueError):
        return_angles(short, short)


def test_strip_heights_golden(golden_dense):
    strip = strip_heights(golden_dense)
    g_min = math.degrees(strip.gamma_min_rad)
    g_max = math.degrees(strip.gamma_max_rad)
    # the strip extents bracket between the return-line separations
    assert g_min >= 107.2 - 1.5
    assert g_max <= 119.6 + 1.5
    assert strip.gamma_min_rad <= strip.gamma_max_rad <= math.pi
    assert strip.n_window_points >= 10_000


def test_strip_heights_rengel(golden_dense, two_bar_dense):
    for seq in (golden_dense, two_bar_dense):
        lam = converged_scaling(scaling_sequence(seq))
        alpha = float(tail_product(seq.cf))
        strip = strip_heights(seq)
        assert abs(lam) >= alpha ** (strip.gamma_max_rad / math.pi)


def test_strip_heights_control_circle(golden_control):
    # boundary is the round circle through 1: log-image height tends to pi
    strip = strip_heights(golden_control, lambda_abs=GOLDEN)
    assert math.degrees(strip.gamma_max_rad) == pytest.approx(180.0, abs=1.0)
    assert math.degrees(strip.gamma_min_rad) >= 150.0


def test_strip_heights_requires_density(golden):
    thin = iterate_returns(golden, 10, keep_dense=True)
    with pytest.raises(ValueError):
        strip_heights(thin, lambda_abs=0.742)


def test_precision_doubling_reproducible(golden):
    seq = iterate_returns(golden, 12)
    worst = verify_precision(seq)
    assert worst < 1e-10


def test_precision_rejection_logic(golden):
    seq = iterate_returns(golden, 10)
    # synthetic corruption of one return must trip the comparator
    bad = seq.records[5]
    seq.records[5] = type(bad)(bad.n, bad.q, bad.z * (1 + 1e-8), bad.drift)
    with pytest.raises(PrecisionError):
        verify_precision(seq)


def test_empirical_qs_constant_control(golden_control):
    k, per_scale = empirical_qs_constant(golden_control)
    assert k == pytest.approx(1.0, abs=1e-4)
    assert all(v == pytest.approx(1.0, abs=1e-4) for v in per_scale.values())


def test_empirical_qs_constant_golden(golden_dense):
    k, per_scale = empirical_qs_constant(golden_dense)
    assert 1.2 < k < 6.0
    vals = list(per_scale.values())
    assert max(vals) / min(vals) < 1.6          # stable across scales


def test_empirical_qs_brackets_return_ratio(golden_dense):
    # nested returns n -> n+2: angle ratio alpha^2 <= 1/2, lemma part 1
    k, _ = empirical_qs_constant(golden_dense)
    ests = scaling_sequence(golden_dense)
    lam = abs(converged_scaling(ests))
    lo, hi = qs_interval_bounds(k, GOLDEN ** 2, 1, 1)
    assert lo <= lam * lam <= hi


def test_csv_dump(tmp_path, golden_fwd):
    path = tmp_path / "returns.csv"
    returns_to_csv(golden_fwd, str(path))
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "n,q,re_z,im_z,abs_z_minus_1,arg_z_minus_1"
    assert len(lines) == 21
    first = lines[1].split(",")
    assert int(first[0]) == 1 and int(first[1]) == 1
