"""Command line front end.

Exit codes: 0 ok, 2 usage, 3 validation, 4 budget.
"""
from __future__ import annotations

import argparse
import sys

from . import farey
from .errors import BudgetError, ValidationError
from .examples import BUILDERS, example
from .family import DEFAULT_DEPTH, DEFAULT_MAX_ASSIGNMENTS, scan_family, verify_embedding, vset, write_scan_csv
from .lift import discontinuities, dump, dumps, left_map, load, right_map
from .rational import format_fraction, parse_fraction
from .rotation import DEFAULT_MAX_ITER, rotation_number, tune_lambda

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_BUDGET = 0, 2, 3, 4


def _frac(text):
    try:
        return parse_fraction(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _axis(text):
    point, sep, values = text.partition("=")
    if not sep or not values:
        raise argparse.ArgumentTypeError(f"axis must look like point=v1,v2,...: {text!r}")
    return _frac(point), [_frac(v) for v in values.split(",")]


def _emit(lift, out, stdout):
    if out:
        dump(lift, out)
    else:
        stdout.write(dumps(lift))


def cmd_rot(args, out):
    res = rotation_number(load(args.map), args.start, max_iter=args.max_iter)
    print(res, file=out)


def cmd_limits(args, out):
    L = load(args.map)
    _emit(left_map(L) if args.side == "left" else right_map(L), args.out, out)


def cmd_gaps(args, out):
    for g in discontinuities(load(args.map)):
        print(f"{format_fraction(g.point)} [{format_fraction(g.lo)}, {format_fraction(g.hi)}]", file=out)


def _print_set(values, out):
    for v in values:
        print(format_fraction(v), file=out)


def cmd_sset(args, out):
    _print_set(farey.sset(args.lo, args.hi), out)


def cmd_farey_check(args, out):
    print("true" if farey.check_pair(args.nu0, args.nu1) else "false", file=out)


def cmd_excluded(args, out):
    c = farey.excluded_center(args.lo, args.hi)
    print("none" if c is None else format_fraction(c), file=out)


def cmd_vset(args, out):
    _print_set(vset(load(args.map), depth=args.depth, max_assignments=args.cap), out)


def cmd_scan(args, out):
    rows = scan_family(load(args.map), args.axis)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_scan_csv(rows, len(args.axis), fh)
    else:
        write_scan_csv(rows, len(args.axis), out)


def cmd_embed(args, out):
    report = verify_embedding(load(args.low), load(args.high), args.max_k)
    for line in report.lines():
        print(line, file=out)


def cmd_tune(args, out):
    res = tune_lambda(load(args.map), args.target, args.delta)
    if not res.converged:
        lo, hi = res.bracket
        raise BudgetError(
            f"no exact lock on {format_fraction(args.target)}; "
            f"lambda bracket [{format_fraction(lo)}, {format_fraction(hi)}]"
        )
    _emit(res.lift, args.out, out)


def cmd_example(args, out):
    _emit(example(args.name, args.alpha, args.beta), args.out, out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circlemaps", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rot", help="rotation number of a map file")
    p.add_argument("map")
    p.add_argument("--start", type=_frac, default=parse_fraction("0"))
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.set_defaults(func=cmd_rot)

    p = sub.add_parser("limits", help="left or right limit map")
    p.add_argument("map")
    p.add_argument("--side", choices=["left", "right"], required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("gaps", help="jump points and their value intervals")
    p.add_argument("map")
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("sset", help="candidate rotation numbers between two values")
    p.add_argument("--lo", type=_frac, required=True)
    p.add_argument("--hi", type=_frac, required=True)
    p.set_defaults(func=cmd_sset)

    p = sub.add_parser("farey-check", help="pair relation for zero-distance maps")
    p.add_argument("nu0", type=_frac)
    p.add_argument("nu1", type=_frac)
    p.set_defaults(func=cmd_farey_check)

    p = sub.add_parser("excluded", help="odd-denominator excluded center")
    p.add_argument("--lo", type=_frac, required=True)
    p.add_argument("--hi", type=_frac, required=True)
    p.set_defaults(func=cmd_excluded)

    p = sub.add_parser("vset", help="rotation numbers realized by changing jump values")
    p.add_argument("map")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--cap", type=int, default=DEFAULT_MAX_ASSIGNMENTS)
    p.set_defaults(func=cmd_vset)

    p = sub.add_parser("scan", help="rotation numbers over a grid of jump values (CSV)")
    p.add_argument("map")
    p.add_argument("--axis", type=_axis, action="append", required=True,
                   help="gap point and comma-separated values, e.g. 0=1/6,1/3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("embed", help="orbit embedding relation between two maps")
    p.add_argument("low")
    p.add_argument("high")
    p.add_argument("--max-k", type=int, default=100)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("tune", help="nearby homeomorphism with a given rotation number")
    p.add_argument("map")
    p.add_argument("--target", type=_frac, required=True)
    p.add_argument("--delta", type=_frac, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("example", help="write a built-in example map")
    p.add_argument("name", choices=sorted(BUILDERS))
    p.add_argument("--alpha", type=_frac, default=parse_fraction("0"))
    p.add_argument("--beta", type=_frac, default=parse_fraction("0"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_example)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        args.func(args, stdout)
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_VALIDATION
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
