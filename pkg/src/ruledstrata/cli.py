"""Command-line front end.

Subcommands: strata, links, plumb, verify-maps, decompositions.  Reports
print as fixed-width tables by default or as JSON with --json; exit status
is 0 exactly when every check in the report passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import reports


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ruledstrata",
        description=("stratification calculator for compatible almost complex "
                     "structures on the rational ruled surfaces"))
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("strata", help="admissible strata for a given form")
    p.add_argument("--lambda", dest="lam", required=True,
                   help="form parameter, a rational like 5/2")
    _common(p)

    p = sub.add_parser("links", help="normal link of one stratum in another")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _common(p)

    p = sub.add_parser("plumb", help="normal form of a linear plumbing chain")
    p.add_argument("--chain", required=True,
                   help="comma-separated Euler numbers, e.g. \"-3,-1\"")
    _common(p)

    p = sub.add_parser("verify-maps", help="residual checks for the "
                                           "explicit projective models")
    p.add_argument("--samples", type=int, default=1000)
    _common(p)

    p = sub.add_parser("decompositions", help="stratum descriptors for a "
                                              "total fiber degree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=3,
                   help="max degeneration nodes per branch (-1 for no bound)")
    p.add_argument("--pointed", action="store_true",
                   help="carry one marked point over a fixed base point")
    _common(p)

    return parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--surface", choices=("trivial", "nontrivial"),
                   default="trivial")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", action="store_true", dest="as_json")


def run(args) -> dict:
    if args.subcommand == "strata":
        return reports.strata_report(Fraction(args.lam),
                                     reports.surface_by_name(args.surface))
    if args.subcommand == "links":
        return reports.links_report(args.m, args.k,
                                    reports.surface_by_name(args.surface))
    if args.subcommand == "plumb":
        chain = [int(x) for x in args.chain.split(",") if x.strip()]
        return reports.plumb_report(chain)
    if args.subcommand == "verify-maps":
        return reports.verify_maps_report(args.samples, args.seed, args.tol)
    if args.subcommand == "decompositions":
        depth = None if args.depth < 0 else args.depth
        return reports.decompositions_report(args.n, depth, args.pointed)
    raise ValueError(f"unknown subcommand {args.subcommand}")


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    # let chain values starting with a minus sign through argparse
    for i, token in enumerate(argv[:-1]):
        if token == "--chain" and argv[i + 1].startswith("-"):
            argv[i:i + 2] = [f"--chain={argv[i + 1]}"]
            break
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.as_json:
        print(json.dumps(report, indent=2))
    else:
        print(reports.render_table(report))
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
