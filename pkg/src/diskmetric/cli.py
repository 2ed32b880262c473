"""Command-line front end.

Every subcommand prints one record to stdout.  JSON records have the shape
``{"command", "config", "results", "diagnostics"}``; CSV and plain output
render the same results as tables.  Timing and progress go to stderr so that
stdout is byte-identical across identical invocations.

Exit codes: 0 success, 1 property failure, 2 invalid input, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import time

import numpy as np

from . import checks
from .comparison import HALF_SQRT2, NOT_ISOMETRIC, hyperbolic_height, kappa_obstruction
from .exceptions import DegenerateInput, DomainError, NonConvergence, OffChord, OutsideDomain
from .geodesics import (
    BoundaryPoint,
    GeodesicRay,
    are_asymptotic,
    divergence_profile_chord,
    divergence_profile_ray,
    hausdorff_distance_rays,
    ray_profile_exact,
)
from .metric import STANDARD, DiskPoint, Generator, distance_closed_form, distance_numeric, power_generator

log = logging.getLogger("diskmetric")

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
INF_SENTINEL = "inf"


class InputError(Exception):
    pass


def parse_generator(text: str) -> Generator:
    """``standard``, ``identity`` or ``power:<alpha>``."""
    if text == "standard":
        return STANDARD
    if text == "identity":
        return Generator.custom(lambda t: t, "identity")
    if text.startswith("power:"):
        try:
            alpha = float(text.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad power exponent in {text!r}") from None
        return power_generator(alpha)
    raise InputError(f"unknown generator {text!r}; use standard, identity or power:<alpha>")


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


# --------------------------------------------------------------------------
# subcommands: each returns (results, diagnostics, table, exit_code)
# --------------------------------------------------------------------------

def cmd_dist(args):
    p, q = DiskPoint(args.x1, args.y1), DiskPoint(args.x2, args.y2)
    gen = parse_generator(args.generator)
    if args.method in ("closed", "both") and gen.kind != "standard":
        raise InputError("the closed form exists only for the standard generator")
    results = {"p": [p.x, p.y], "q": [q.x, q.y]}
    diagnostics = {}
    if args.method in ("closed", "both"):
        results["closed"] = distance_closed_form(p, q)
    if args.method in ("quadrature", "both"):
        quad = distance_numeric(p, q, gen, args.tol)
        results["quadrature"] = quad.value
        diagnostics["quadrature_error_estimate"] = quad.abs_error_estimate
        diagnostics["quadrature_subintervals"] = quad.subintervals_used
    results["value"] = results.get("closed", results.get("quadrature"))
    if args.method == "both":
        results["discrepancy"] = abs(results["closed"] - results["quadrature"])
    row = {k: v for k, v in results.items() if k not in ("p", "q")}
    row = {"x1": p.x, "y1": p.y, "x2": q.x, "y2": q.y, **row}
    return results, diagnostics, [row], EXIT_OK


def cmd_heights(args):
    rep = kappa_obstruction()
    results = {
        "h_ideal": rep.ideal_height,
        "hD_half_sqrt2": rep.d_height_half,
        "hD_1": rep.d_height_ideal,
        "h_of_D_half_sqrt2": rep.hyperbolic_height_of_leg,
        "kappa0": rep.kappa0,
        "rho": rep.rho,
        "kappa0_exceeds_3": rep.kappa0_exceeds_3,
        "rho_below_3": rep.rho_below_3,
        "verdict": rep.verdict,
    }
    code = EXIT_OK if rep.verdict == NOT_ISOMETRIC else EXIT_PROPERTY
    return results, {}, [results], code


def cmd_check(args):
    samples = args.samples
    seed = args.seed_pos if args.seed_pos is not None else args.seed
    if samples < 1:
        raise InputError("samples must be positive")
    props = checks.run_suite(args.suite, samples, seed)
    rows = [p.as_dict() for p in props]
    passed = all(p.passed for p in props)
    results = {"suite": args.suite, "samples": samples, "seed": seed, "passed": passed, "properties": rows}
    return results, {}, rows, EXIT_OK if passed else EXIT_PROPERTY


def cmd_diverge(args):
    eps = list(args.eps)
    if any(e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
        raise InputError("epsilons must be strictly decreasing")
    angles = [_angle(a, args.degrees) for a in args.angles]
    rows = []
    if args.mode == "ray":
        if len(angles) != 1:
            raise InputError("ray mode takes one boundary angle")
        xi = BoundaryPoint(angles[0])
        for e in eps:
            res = divergence_profile_ray(xi, e)
            rows.append({"epsilon": e, "value": res.value, "analytic": ray_profile_exact(e),
                         "error_estimate": res.abs_error_estimate})
    else:
        if len(angles) != 2:
            raise InputError("chord mode takes two boundary angles")
        xi, eta = BoundaryPoint(angles[0]), BoundaryPoint(angles[1])
        for e in eps:
            res = divergence_profile_chord(xi, eta, e)
            rows.append({"epsilon": e, "value": res.value, "error_estimate": res.abs_error_estimate})
    values = [r["value"] for r in rows]
    increasing = all(b > a for a, b in zip(values, values[1:]))
    results = {"mode": args.mode, "angles": angles, "rows": rows, "strictly_increasing": increasing}
    return results, {}, rows, EXIT_OK if increasing else EXIT_PROPERTY


def cmd_hausdorff(args):
    r1 = GeodesicRay(DiskPoint(*args.origin1), BoundaryPoint(_angle(args.end1, args.degrees)))
    r2 = GeodesicRay(DiskPoint(*args.origin2), BoundaryPoint(_angle(args.end2, args.degrees)))
    if args.grid < 16:
        raise InputError("grid must be at least 16")
    rows = []
    for c in args.cutoffs:
        est = hausdorff_distance_rays(r1, r2, args.grid, c)
        rows.append({"cutoff": c, "value": est.value, "forward": est.forward,
                     "backward": est.backward, "resolution": est.resolution})
    values = [r["value"] for r in rows]
    diffs = [b - a for a, b in zip(values, values[1:])]
    asymptotic = are_asymptotic(r1, r2)
    if asymptotic:
        verdict = "bounded (asymptotic)"
        corroborated = all(abs(d) < 0.05 for d in diffs)
    else:
        verdict = "divergent"
        corroborated = all(d > 1.0 for d in diffs)
    results = {"verdict": verdict, "asymptotic": asymptotic, "corroborated": corroborated, "rows": rows}
    return results, {"grid": args.grid}, rows, EXIT_OK


def cmd_grid(args):
    n = args.resolution
    if n < 2:
        raise InputError("resolution must be at least 2")
    center = DiskPoint(*args.center)
    axis = np.linspace(-1.0, 1.0, n)
    matrix = []
    for y in axis[::-1]:
        row = []
        for x in axis:
            try:
                p = DiskPoint(float(x), float(y))
            except DomainError:
                row.append(INF_SENTINEL)
                continue
            row.append(distance_closed_form(center, p))
        matrix.append(row)
    results = {"center": [center.x, center.y], "xs": axis.tolist(), "ys": axis[::-1].tolist(), "values": matrix}
    table = [{"y": float(y), **{repr(float(x)): v for x, v in zip(axis, row)}} for y, row in zip(axis[::-1], matrix)]
    return results, {}, table, EXIT_OK


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(fmt: str, record: dict, table: list[dict]) -> str:
    if fmt == "json":
        return json.dumps(record, ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if table:
            writer = csv.writer(buf, lineterminator="\n")
            header = list(table[0].keys())
            writer.writerow(header)
            for row in table:
                writer.writerow([_fmt(row.get(k, "")) for k in header])
        return buf.getvalue()
    lines = []
    for row in table:
        lines.append("  ".join(f"{k}={_fmt(v)}" for k, v in row.items()))
    scalars = [] if (len(table) == 1 and table[0] is record["results"]) else record["results"].items()
    for k, v in scalars:
        if not isinstance(v, (list, dict)):
            lines.append(f"{k}: {_fmt(v)}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")
    common.add_argument("--method", choices=["closed", "quadrature", "both"], default="closed")
    common.add_argument("--format", choices=["json", "csv", "plain"], default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--degrees", action="store_true", help="read angles in degrees")
    common.add_argument("--generator", default="standard", help="standard, identity or power:<alpha>")

    parser = argparse.ArgumentParser(prog="diskmetric", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="distance between two points")
    for name in ("x1", "y1", "x2", "y2"):
        p.add_argument(name, type=float)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("heights", parents=[common], help="triangle heights and the kappa obstruction")
    p.set_defaults(func=cmd_heights)

    p = sub.add_parser("check", parents=[common], help="run a seeded property suite")
    p.add_argument("suite", choices=sorted(checks.SUITES))
    p.add_argument("samples", type=int, nargs="?", default=1000)
    p.add_argument("seed_pos", metavar="seed", type=int, nargs="?", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("diverge", parents=[common], help="truncated divergence profiles")
    p.add_argument("mode", choices=["ray", "chord"])
    p.add_argument("angles", type=float, nargs="+")
    p.add_argument("--eps", type=float, nargs="+", default=[0.1, 0.01, 0.001])
    p.set_defaults(func=cmd_diverge)

    p = sub.add_parser("hausdorff", parents=[common], help="Hausdorff distance between two rays")
    p.add_argument("--origin1", type=float, nargs=2, default=[0.0, 0.0])
    p.add_argument("--end1", type=float, default=0.0)
    p.add_argument("--origin2", type=float, nargs=2, default=[0.5, 0.5])
    p.add_argument("--end2", type=float, default=0.0)
    p.add_argument("--cutoffs", type=float, nargs="+", default=[1 - 1e-3, 1 - 1e-4, 1 - 1e-5])
    p.add_argument("--grid", type=int, default=64)
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("grid", parents=[common], help="distance field on a Cartesian grid (CSV)")
    p.add_argument("resolution", type=int)
    p.add_argument("--center", type=float, nargs=2, default=[0.0, 0.0])
    p.set_defaults(func=cmd_grid, default_format="csv")
    return parser


def _config(args) -> dict:
    skip = {"func", "default_format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    start = time.perf_counter()
    try:
        results, diagnostics, table, code = args.func(args)
    except (InputError, DomainError, DegenerateInput, OffChord, OutsideDomain) as exc:
        print(f"diskmetric: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonConvergence as exc:
        print(f"diskmetric: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    log.info("%s finished in %.3f s", args.command, time.perf_counter() - start)
    record = {"command": args.command, "config": _config(args), "results": results, "diagnostics": diagnostics}
    sys.stdout.write(render(args.format, record, table))
    return code


if __name__ == "__main__":
    sys.exit(main())
