"""Command-line front end: one subcommand per library operation.

Exit status: 0 on success, 2 on a usage error, 1 when the library raises
(or when ``reproduce`` has a failing row).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import classes, dynamics, entropy, hierarchy, qmetric, reproduce
from .errors import CQSpaceError

FORMATS = ("json", "csv", "table")


def _common(parser, *, pair=True):
    if pair:
        parser.add_argument("-f", "--f", dest="f", required=True, metavar="EXPR")
        parser.add_argument("-g", "--g", dest="g", required=True, metavar="EXPR")
    parser.add_argument("--N", type=int, default=qmetric.DEFAULT_N, help="series truncation (default 80)")
    parser.add_argument("--format", choices=FORMATS, default="table")
    parser.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cqspace", description="Complexity quasi-metric toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("dist", help="complexity distance dc(f, g)")
    _common(p)

    p = sub.add_parser("orbit", help="distances along the scaling orbit")
    _common(p)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--kmin", type=int, default=0)
    p.add_argument("--kmax", type=int, default=5)

    for name, text in (("expansive", "search for an orbit-separating iterate"),
                       ("stable", "delta-stable set membership of g for f"),
                       ("hierarchy", "gap heuristic plus symmetrized orbit separation")):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.add_argument("--alpha", type=float, default=2.0)
        p.add_argument("--delta", type=float, default=0.1)
        p.add_argument("--M", type=int, default=50)

    p = sub.add_parser("separation", help="predicted separation iterate for a pair")
    _common(p)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--delta", type=float, default=0.1)

    p = sub.add_parser("unstable", help="unstable set membership of g for f (g <= f pointwise)")
    _common(p)

    p = sub.add_parser("entropy", help="spanning numbers and growth slope on a finite set K")
    p.add_argument("-f", "--f", dest="f", action="append", required=True, metavar="EXPR",
                   help="an element of K; repeat for each element")
    _common(p, pair=False)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--variant", choices=[v.value for v in entropy.Variant], default="two-sided")

    p = sub.add_parser("reproduce", help="recompute every reference value as a pass/fail table")
    _common(p, pair=False)
    return parser


def execute(args):
    """Map parsed arguments onto exactly one library call."""
    c = args.command
    if c == "dist":
        return qmetric.dc(args.f, args.g, args.N)
    if c == "orbit":
        return dynamics.orbit_trace(args.f, args.g, args.alpha, args.kmin, args.kmax, args.N)
    if c == "expansive":
        return dynamics.check_expansive(args.f, args.g, args.alpha, args.delta, args.M, args.N)
    if c == "stable":
        return classes.stable_membership(args.f, args.g, args.alpha, args.delta, args.M, args.N)
    if c == "unstable":
        return classes.unstable_membership(args.f, args.g, args.N)
    if c == "separation":
        return dynamics.pair_separation_iterate(args.f, args.g, args.alpha, args.delta, args.N)
    if c == "hierarchy":
        return hierarchy.hierarchy_report(args.f, args.g, args.alpha, args.delta, args.M, args.N)
    if c == "entropy":
        return entropy.entropy_estimate(args.f, args.alpha, args.epsilon, args.nmax, args.variant, args.N)
    if c == "reproduce":
        return reproduce.reproduce(args.N)
    raise AssertionError(c)


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------

def _as_data(result):
    if isinstance(result, list):
        return reproduce.rows_to_dicts(result)
    return result.to_dict()


def _flat_csv(data: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(data.keys())
    writer.writerow(data.values())
    return buf.getvalue()


def _to_csv(result) -> str:
    if isinstance(result, list):
        return reproduce.rows_to_csv(result)
    if isinstance(result, hierarchy.HierarchyReport):
        return result.gap.to_csv()
    if hasattr(result, "to_csv"):
        return result.to_csv()
    return _flat_csv(result.to_dict())


def _csv_as_table(text: str) -> str:
    rows = list(csv.reader(io.StringIO(text)))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def _key_values(data: dict) -> str:
    return "".join(f"{k}: {v}\n" for k, v in data.items())


def _to_table(result) -> str:
    if isinstance(result, list):
        return reproduce.rows_to_table(result)
    if isinstance(result, dynamics.SeparationResult):
        if result.found:
            head = (f"found at k={result.at_iterate} ({result.witness_direction.value}, "
                    f"distance {result.distance:.6g} > {result.delta})\n")
        else:
            head = f"not found within {result.scanned} scanned iterates\n"
        return head + _key_values(result.to_dict())
    if isinstance(result, hierarchy.HierarchyReport):
        gap = result.gap
        return (f"gap: {gap.verdict.value} ({len(gap.samples)} samples, {gap.skipped} skipped)\n"
                + _to_table(result.separation))
    if isinstance(result, entropy.EntropyEstimate):
        data = result.to_dict()
        del data["spanning_counts"]
        return _key_values(data) + _csv_as_table(result.to_csv())
    if isinstance(result, dynamics.OrbitTrace):
        return _csv_as_table(result.to_csv())
    return _key_values(result.to_dict())


def render(args, result) -> str:
    if args.format == "json":
        params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "out")}
        envelope = {"command": args.command, "params": params, "result": _as_data(result)}
        return json.dumps(envelope, indent=2) + "\n"
    if args.format == "csv":
        return _to_csv(result)
    return _to_table(result)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        result = execute(args)
    except CQSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = render(args, result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "reproduce" and not reproduce.all_passed(result):
        return 1
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
