"""Recompute the reference values of the library as a pass/fail table.

Each row carries its own tolerance: ``None`` means exact equality (integer
iterates, verdicts), a number means ``|computed - expected| <= tolerance``.
Every numeric row is computed at the caller's truncation ``N``, so forcing a
small horizon makes the truncation-sensitive rows fail.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass

from .classes import stable_membership, unstable_membership
from .dynamics import orbit_trace, pair_separation_iterate, scale
from .entropy import Variant, entropy_estimate
from .hierarchy import gap_check, hierarchy_separation
from .qmetric import DEFAULT_N, ORACLE_PAIRS, OraclePair, closed_form_oracle, dc, dc_sym, partial_sums

CLOSED_FORM_TOL = math.ldexp(1.0, -80) + 1e-12
THREE_DECIMALS = 1e-3


@dataclass(frozen=True)
class ReproRow:
    label: str
    expected: object
    computed: object
    tolerance: float | None
    passed: bool


def _num(label, expected, computed, tol):
    return ReproRow(label, expected, computed, tol, abs(computed - expected) <= tol)


def _eq(label, expected, computed):
    return ReproRow(label, expected, computed, None, expected == computed)


def _rows(N):
    for pair in OraclePair:
        f, g = ORACLE_PAIRS[pair]
        yield _num(f"closed form {pair.value}", closed_form_oracle(pair), dc(f, g, N).value, CLOSED_FORM_TOL)

    distances = [
        ("dc(n^2, n)", "n^2", "n", 0.111),
        ("dc(n+1, n)", "n+1", "n", 0.307),
        ("dc(2*n, n)", "2*n", "n", 0.347),
        ("dc(n, log(n+1))", "n", "log(n+1)", 0.417),
        ("dc(n, sqrt(n))", "n", "sqrt(n)", 0.113),
        ("dc(n^3, n^2)", "n^3", "n^2", 0.045),
        ("dc(n + (-1)^(n+1), n)", "n + (-1)^(n+1)", "n", 0.262),
        ("dc(n, n + (-1)^(n+1))", "n", "n + (-1)^(n+1)", 0.131),
        ("dc(1, 1/n)", "1", "1/n", 1.0),
    ]
    for label, f, g, expected in distances:
        yield _num(label, expected, dc(f, g, N).value, THREE_DECIMALS)
    yield _num("dc_sym(n, n*log(n+1)^2)", 0.541, dc_sym("n", "n*log(n+1)^2", N).value, THREE_DECIMALS)

    sums = dict(partial_sums("n^2", "n", 5)) if N >= 5 else {}
    yield _num("partial sum S2 of dc(n^2, n)", 0.0625, sums.get(2, math.nan), 0.0)
    for n, expected in ((3, 0.0903), (4, 0.1020), (5, 0.1070)):
        yield _num(f"partial sum S{n} of dc(n^2, n)", expected, sums.get(n, math.nan), 5e-4)

    yield _eq("separation iterate (n^2, n), alpha=2, delta=0.5", 3,
              pair_separation_iterate("n^2", "n", 2, 0.5, N).iterate)
    yield _eq("separation iterate (n+1, n), alpha=1.01, delta=0.5", 50,
              pair_separation_iterate("n+1", "n", 1.01, 0.5, N).iterate)

    yield _num("dc(3*n^2, 3*n)", 0.037, dc(scale("n^2", 3), scale("n", 3), N).value, THREE_DECIMALS)

    forward = orbit_trace("n^3", "n^2", 2, 0, 3, N)
    for row, expected in zip(forward.rows, (0.045, 0.023, 0.011, 0.006)):
        yield _num(f"orbit (n^3, n^2), alpha=2, k={row.k}", expected, row.d_fg, THREE_DECIMALS)
    backward = orbit_trace("n^2", "n", 3, -3, 0, N)
    for row, expected in zip(reversed(backward.rows), (0.111, 0.333, 0.999, 1.000)):
        yield _num(f"orbit (n^2, n), alpha=3, k={row.k} (capped)", expected, row.d_fg, 2e-3)

    for f, g, expected in (
        ("n", "n*log(n+1)^2", "GAP_HOLDS"),
        ("n^2", "2^n", "GAP_HOLDS"),
        ("n*log(n)", "n*log(n)*log(log(n))", "GAP_FAILS"),
    ):
        yield _eq(f"gap ({f}, {g})", expected, gap_check(f, g).verdict.value)
    sep = hierarchy_separation("n", "n*log(n+1)^2", 2, 0.05, N=N)
    yield _eq("hierarchy separation iterate (n, n*log(n+1)^2)", 0, sep.at_iterate)

    for g, delta, expected in (("sqrt(n)", 0.1, False), ("sqrt(n)", 0.2, True), ("2*n", 0.1, True)):
        yield _eq(f"stable member n <- {g}, delta={delta}", expected,
                  stable_membership("n", g, 2, delta, N=N).member)
    yield _eq("stable member 2^n <- n^100, delta=0.01", False,
              stable_membership("2^n", "n^100", 2, 0.01, N=N).member)
    for f, g, expected in (("n", "n+1", False), ("n^2", "n", True), ("n^2", "2^n", False)):
        yield _eq(f"unstable member {f} <- {g}", expected, unstable_membership(f, g, N).member)

    single = entropy_estimate(["n"], 2, 0.1, 8, Variant.TWO_SIDED, N)
    yield _eq("entropy singleton K: max r", 1, max(r for _, r in single.spanning_counts))


def reproduce(N: int = DEFAULT_N) -> list[ReproRow]:
    return list(_rows(N))


def all_passed(rows) -> bool:
    return all(r.passed for r in rows)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("label", "expected", "computed", "tolerance", "status"))
    for r in rows:
        writer.writerow((r.label, r.expected, r.computed, "exact" if r.tolerance is None else r.tolerance,
                         "PASS" if r.passed else "FAIL"))
    return buf.getvalue()


def rows_to_table(rows) -> str:
    def fmt(v):
        return f"{v:.6g}" if isinstance(v, float) else str(v)

    cells = [("label", "expected", "computed", "tolerance", "status")]
    for r in rows:
        tol = "exact" if r.tolerance is None else f"{r.tolerance:.3g}"
        cells.append((r.label, fmt(r.expected), fmt(r.computed), tol, "PASS" if r.passed else "FAIL"))
    widths = [max(len(c[i]) for c in cells) for i in range(5)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in cells) + "\n"


def rows_to_dicts(rows):
    return [asdict(r) for r in rows]
