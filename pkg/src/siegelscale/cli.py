"""Batch command-line front-end with machine-readable output.

Subcommands: bounds, lambda, angles, blaschke-fit, xratio-verify.  Every
report echoes its configuration, is schema-versioned, and serializes with
sorted keys so identical configurations produce byte-identical JSON.
Exit codes: 0 ok, 2 parse error, 3 numeric escape / precision failure,
4 check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys

from . import __version__
from .contfrac import parse_rotation_number, tail_product
from .bounds import (
    constants_ledger,
    cylinder_modulus,
    period_envelope_constants,
    scaling_ratio_bounds,
    scaling_ratio_window,
    triangle_criterion,
)
from .dynamics import (
    AmbiguousRootError,
    EscapeError,
    PrecisionError,
    backward_returns,
    converged_scaling,
    iterate_returns,
    return_angles,
    returns_to_csv,
    rotation_control_returns,
    scaling_sequence,
    strip_heights,
)
from .blaschke import (
    CircleLift,
    sample_allowable_configuration,
    solve_t,
    xratio_inequality_check,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ESCAPE = 3
EXIT_CHECK_FAILED = 4


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    tmp = out + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, out)


def _report(kind: str, config: dict, body: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": f"siegelscale {__version__}",
        "kind": kind,
        "config": config,
        **body,
    }


def cmd_bounds(args) -> int:
    cf = parse_rotation_number(args.cf)
    B = args.B if args.B is not None else cf.max_quotient
    ledger = constants_ledger(Q=args.Q, B=B)
    rep = scaling_ratio_bounds(cf, ledger)
    alpha = tail_product(cf)
    case = rep.case
    envelope = period_envelope_constants(B, cf.s, case, ledger)
    window = scaling_ratio_window(alpha)
    body = {
        "bounds": rep.to_json(),
        "window": {"lower": window[0], "upper": window[1],
                   "formula": "alpha < |lambda| < 1"},
        "cylinder_modulus": {"value": cylinder_modulus(alpha),
                             "formula": "-pi / ln(alpha^2)"},
        "triangle_criterion": {"value": triangle_criterion(alpha),
                               "formula": "-pi / ln(alpha^2) > 1/2"},
        "envelope": envelope.to_json(),
        "constants": ledger.to_json(),
        "formulas": {
            "lower": "alpha^gamma",
            "upper": "four-case quasisymmetric interval-ratio bound",
            "K": "lambda(2 K2 - 1)^{4 K2 - 2} K2^{2 K2 - 1}",
        },
    }
    _emit(_report("bounds", _config(args, cf=str(cf), Q=args.Q, B=B), body),
          args.out)
    return EXIT_OK


def cmd_lambda(args) -> int:
    cf = parse_rotation_number(args.cf)
    control = args.control == "rotation"
    if control:
        seq = rotation_control_returns(cf, args.nmax, precision_bits=args.bits)
    else:
        seq = iterate_returns(cf, args.nmax, precision_bits=args.bits,
                              escape_radius=args.escape)
    ests = scaling_sequence(seq)
    lam = converged_scaling(ests)
    alpha = float(tail_product(cf))
    ledger = constants_ledger(Q=8, B=cf.max_quotient)
    rep = scaling_ratio_bounds(cf, ledger)
    checks = {
        "window_lower": {"passed": alpha < abs(lam),
                         "formula": "alpha < |lambda|", "alpha": alpha},
        "window_upper": {"passed": abs(lam) < 1.0, "formula": "|lambda| < 1"},
        "scaling_lower": {"passed": abs(lam) >= rep.lower,
                          "formula": "alpha^gamma <= |lambda|",
                          "lower": rep.lower},
        "scaling_upper": {"passed": rep.vacuous_upper or abs(lam) <= 1.0,
                          "formula": "|lambda| <= four-case upper bound",
                          "upper_readable": rep.upper_readable()},
    }
    if control:
        checks["control_alpha"] = {
            "passed": abs(abs(lam) - alpha) <= 1e-6,
            "formula": "| |lambda| - alpha | <= 1e-6 (rigid rotation)",
            "deviation": abs(abs(lam) - alpha),
        }
    body = {
        "lambda": {"re": lam.real, "im": lam.imag, "abs": abs(lam)},
        "estimates": [e.to_json() for e in ests],
        "checks": checks,
        "all_checks_passed": all(c["passed"] for c in checks.values()),
    }
    config = _config(args, cf=str(cf), nmax=args.nmax, bits=args.bits,
                     escape=args.escape, control=args.control)
    _emit(_report("lambda", config, body), args.out)
    if args.out:
        returns_to_csv(seq, os.path.splitext(args.out)[0] + ".csv")
    return EXIT_OK if body["all_checks_passed"] else EXIT_CHECK_FAILED


def cmd_angles(args) -> int:
    cf = parse_rotation_number(args.cf)
    seq = iterate_returns(cf, args.nmax, precision_bits=args.bits,
                          escape_radius=args.escape, keep_dense=True,
                          extend_to=args.dense)
    bwd = backward_returns(cf, args.nmax, precision_bits=args.bits,
                           escape_radius=args.escape)
    rep = return_angles(seq, bwd)
    try:
        strip = strip_heights(seq)
        rep.gamma_min_rad = strip.gamma_min_rad
        rep.gamma_max_rad = strip.gamma_max_rad
        rep.gamma_err_rad = max(strip.gamma_min_err, strip.gamma_max_err)
        strip_json = strip.to_json()
    except ValueError as exc:  # not enough window density at this budget
        strip_json = {"error": str(exc)}
    body = {"angles": rep.to_json(), "strip": strip_json}
    config = _config(args, cf=str(cf), nmax=args.nmax, bits=args.bits,
                     escape=args.escape, dense=args.dense)
    _emit(_report("angles", config, body), args.out)
    return EXIT_OK


def cmd_blaschke_fit(args) -> int:
    cf = parse_rotation_number(args.cf)
    res = solve_t(cf, tol=args.tol)
    body = {"fit": res.to_json(),
            "passed": res.residual_bound <= args.tol}
    config = _config(args, cf=str(cf), tol=args.tol)
    _emit(_report("blaschke-fit", config, body), args.out)
    return EXIT_OK if body["passed"] else EXIT_CHECK_FAILED


def cmd_xratio_verify(args) -> int:
    cf = parse_rotation_number(args.cf)
    fit = solve_t(cf, tol=args.tol)
    lift = CircleLift(fit.t)
    rng = random.Random(args.seed)
    worst = 0.0
    failures = 0
    for i in range(args.trials):
        quads = sample_allowable_configuration(
            rng, n_quadruples=rng.randint(1, 5), include_critical=(i % 2 == 0))
        res = xratio_inequality_check(lift, quads)
        worst = max(worst, res.product)
        failures += 0 if res.passed else 1
    body = {
        "fit": fit.to_json(),
        "trials": args.trials,
        "worst_product": worst,
        "bound": 8.0,
        "failures": failures,
        "passed": failures == 0,
        "formula": "prod chi(g(quad))/chi(quad) <= 8",
    }
    config = _config(args, cf=str(cf), trials=args.trials, seed=args.seed,
                     tol=args.tol)
    _emit(_report("xratio-verify", config, body), args.out)
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


def _config(args, **kw) -> dict:
    kw["seed"] = getattr(args, "seed", None)
    return kw


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="siegelscale",
        description="Siegel-disk scaling ratios: bounds, orbits, circle model.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, orbit=False):
        p.add_argument("--cf", required=True,
                       help="rotation number as 'preperiod;period', e.g. ';1'")
        p.add_argument("--out", default=None, help="write JSON here (atomic)")
        if orbit:
            p.add_argument("--nmax", type=int, default=16,
                           help="deepest return index")
            p.add_argument("--bits", type=int, default=212,
                           help="working precision in bits")
            p.add_argument("--escape", type=float, default=4.0,
                           help="escape radius aborting the orbit")

    p = sub.add_parser("bounds", help="closed-form scaling-ratio bounds")
    common(p)
    p.add_argument("--Q", type=int, default=8, help="cross-ratio bound")
    p.add_argument("--B", type=int, default=None,
                   help="partial-quotient cap (default: max of cf)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lambda", help="orbit run and scaling estimates")
    common(p, orbit=True)
    p.add_argument("--control", choices=["rotation"], default=None,
                   help="replace the quadratic map by the rigid rotation")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("angles", help="return-line angles and strip heights")
    common(p, orbit=True)
    p.add_argument("--dense", type=int, default=300_000,
                   help="dense orbit length for the strip estimator")
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("blaschke-fit", help="solve the circle-map parameter t")
    common(p)
    p.add_argument("--tol", type=float, default=1e-8,
                   help="certified rotation-number residual")
    p.set_defaults(func=cmd_blaschke_fit)

    p = sub.add_parser("xratio-verify", help="cross-ratio inequality check")
    common(p)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_xratio_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (EscapeError, PrecisionError, AmbiguousRootError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_ESCAPE


if __name__ == "__main__":
    sys.exit(main())
