"""Command-line front end.

Every number is printed with ``repr`` (shortest round-trip form), so output
is bit-for-bit reproducible. Exit status: 0 success, 1 numerical failure,
2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

import numpy as np

from . import curvature, discrete, negative, robustness
from .distribution import _read_column, make_distribution, parse_values, read_distribution
from .entropy import renyi_entropy
from .errors import NumericalFailure, ValidationError

EXIT_OK, EXIT_NUMERIC, EXIT_INVALID = 0, 1, 2


def _num(x: float) -> str:
    return repr(float(x))


def _floats(text: str) -> list[float]:
    return parse_values(text)


def _ints(text: str) -> list[int]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if item:
            out.append(int(float(item)) if "e" in item.lower() else int(item))
    return out


def _vector(source: str) -> list[float]:
    import os

    return _read_column(source) if os.path.isfile(source) else parse_values(source)


def _csv_writer(out):
    return csv.writer(out, lineterminator="\r\n")


def cmd_entropy(args, out):
    d = read_distribution(args.dist)
    print(_num(renyi_entropy(d, args.alpha)), file=out)


def cmd_curve(args, out, err):
    d = read_distribution(args.dist)
    if not 0 < args.alpha_min < args.alpha_max:
        raise ValidationError("need 0 < alpha-min < alpha-max")
    if args.points < 2:
        raise ValidationError("need at least 2 points")
    restricted = d if d.full_support else make_distribution(d.support_probs)
    if not d.full_support:
        print("warning: distribution has zero entries; h2 column left empty", file=err)
    w = _csv_writer(out)
    w.writerow(["alpha", "h", "h1", "h2"])
    for a in np.geomspace(args.alpha_min, args.alpha_max, args.points):
        h = renyi_entropy(d, a)
        h1 = curvature.first_derivative(restricted, a)
        h2 = _num(curvature.second_derivative(d, a)) if d.full_support else ""
        w.writerow([_num(a), _num(h), _num(h1), h2])


def cmd_inflections(args, out):
    d = read_distribution(args.dist)
    roots = curvature.find_inflections(d, args.alpha_min, args.alpha_max, args.grid)
    json.dump(roots, out)
    out.write("\n")


def cmd_family(args, out):
    p1, p2 = args.p1, args.p2
    upper = 1.0 - p1 - p2
    if not (p1 > 0 and p2 > 0 and upper > 0):
        raise ValidationError("need p1, p2 > 0 with p1 + p2 < 1")
    if args.p3 is not None:
        grid = _floats(args.p3)
    else:
        if args.steps < 1:
            raise ValidationError("steps must be positive")
        grid = [upper * i / (args.steps + 1) for i in range(1, args.steps + 1)]
    for p3 in grid:
        if not 0 < p3 < upper:
            raise ValidationError(f"p3 = {p3!r} touches or leaves (0, {upper!r})")
    alphas = _floats(args.alphas)
    w = _csv_writer(out)
    w.writerow(["p3", "alpha", "h"])
    for p3 in grid:
        d = make_distribution([p1, p2, p3, 1.0 - p1 - p2 - p3])
        for a in alphas:
            w.writerow([_num(p3), _num(a), _num(renyi_entropy(d, a))])


def cmd_perturb(args, out):
    d = read_distribution(args.dist)
    spec = robustness.PerturbationSpec(_vector(args.coeffs))
    report = robustness.empirical_rate(d, spec, args.alpha, args.eps_start, args.eps_factor, args.steps)
    if args.out == "csv":
        _write_eps_table(report, out)
    else:
        json.dump(report.as_dict(), out, indent=2)
        out.write("\n")
    if args.csv_file:
        with open(args.csv_file, "w", newline="") as fh:
            _write_eps_table(report, fh)


def _write_eps_table(report, fh):
    w = _csv_writer(fh)
    w.writerow(["eps", "delta", "ratio"])
    for e, dh, r in zip(report.eps_grid, report.deltas, report.ratios):
        w.writerow([_num(e), _num(dh), _num(r)])


def cmd_construct_negative(args, out):
    t = negative.build_two_level(args.k, args.n)
    pt = negative.ImplicitPoint(t.p0 * t.n, t.q0 * t.n, args.k / args.n)
    record = {
        "n": t.n,
        "k": t.k,
        "x": pt.x,
        "y": pt.y,
        "r": (pt.y - 1.0) / (pt.y - pt.x),
        "p0": t.p0,
        "q0": t.q0,
        "certificate": negative.curvature_certificate(t),
        "h2_at_zero": curvature.second_derivative_at_zero(t.distribution),
        "residuals": {"sum": t.sum_residual, "critical": t.critical_residual},
    }
    if args.out == "csv":
        _write_dist(t, out)
    else:
        json.dump(record, out, indent=2)
        out.write("\n")
    if args.csv_file:
        with open(args.csv_file, "w", newline="") as fh:
            _write_dist(t, fh)


def _write_dist(t, fh):
    w = _csv_writer(fh)
    w.writerow(["p"])
    for p in t.distribution.probs:
        w.writerow([_num(p)])


def cmd_binpoi(args, out):
    trunc = discrete.TruncationPolicy(args.rel_tol, args.max_terms)
    rows = discrete.convergence_table(args.lam, args.alpha, _ints(args.n), trunc)
    w = _csv_writer(out)
    w.writerow(["n", "h_binomial", "h_poisson", "diff", "tail_bound"])
    for r in rows:
        w.writerow([r.n, _num(r.h_binomial), _num(r.h_poisson), _num(r.difference), _num(r.tail_bound)])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="renyi-convexity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    dist_help = "inline list (0.4,0.4,0.2 or 198x1/400,...) or a one-column CSV file"

    p = sub.add_parser("entropy", help="print H_alpha")
    p.add_argument("--dist", required=True, help=dist_help)
    p.add_argument("--alpha", type=float, required=True)

    p = sub.add_parser("curve", help="CSV of H, H', H'' on a log-spaced alpha grid")
    p.add_argument("--dist", required=True, help=dist_help)
    p.add_argument("--alpha-min", type=float, default=0.01)
    p.add_argument("--alpha-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=500)

    p = sub.add_parser("inflections", help="JSON list of alpha where H'' changes sign")
    p.add_argument("--dist", required=True, help=dist_help)
    p.add_argument("--alpha-min", type=float, default=0.01)
    p.add_argument("--alpha-max", type=float, default=10.0)
    p.add_argument("--grid", type=int, default=2000)

    p = sub.add_parser("family", help="H_alpha along (p1, p2, p3, 1-p1-p2-p3)")
    p.add_argument("--p1", type=float, default=0.05)
    p.add_argument("--p2", type=float, default=0.05)
    p.add_argument("--p3-steps", "--steps", dest="steps", type=int, default=9, help="interior p3 grid size")
    p.add_argument("--p3", default=None, help="explicit comma list of p3 values")
    p.add_argument("--alphas", default="0.5,1,2")

    p = sub.add_parser("perturb", help="empirical rate of H(p) - H(p + c eps)")
    p.add_argument("--dist", required=True, help=dist_help)
    p.add_argument("--coeffs", required=True, help="coefficient vector, inline or CSV file")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eps-start", type=float, default=1e-3)
    p.add_argument("--eps-factor", type=float, default=0.1)
    p.add_argument("--steps", type=int, default=4)
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.add_argument("--csv-file", default=None, help="also write the eps table here")

    p = sub.add_parser("construct-negative", help="two-level distribution with H''(0) < 0")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.add_argument("--csv-file", default=None, help="also write the expanded distribution here")

    p = sub.add_parser("binpoi", help="binomial vs Poisson Rényi entropy table")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", default="100,1000,10000")
    p.add_argument("--rel-tol", type=float, default=1e-14)
    p.add_argument("--max-terms", type=int, default=1_000_000)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "entropy": lambda: cmd_entropy(args, out),
        "curve": lambda: cmd_curve(args, out, err),
        "inflections": lambda: cmd_inflections(args, out),
        "family": lambda: cmd_family(args, out),
        "perturb": lambda: cmd_perturb(args, out),
        "construct-negative": lambda: cmd_construct_negative(args, out),
        "binpoi": lambda: cmd_binpoi(args, out),
    }
    try:
        handlers[args.command]()
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INVALID
    except (NumericalFailure, FloatingPointError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
