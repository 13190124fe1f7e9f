"""Spanning-set entropy estimates for psi_alpha restricted to a finite set K.

Two iterated metrics are offered:

FORWARD
    d_n(f, g) = max_{0 <= j < n} dc_sym(psi^j f, psi^j g).  For alpha > 1
    this is just dc_sym(f, g), so spanning numbers do not grow with n.
TWO_SIDED
    the same maximum over -(n-1) <= j <= n-1, which picks up the backward
    expansion.

Distances are capped at 1 in both variants.  On a finite K the spanning
number is at most |K|, so every full-range growth rate tends to zero; the
slope over the window before saturation is reported as a separate,
explicitly labelled proxy.
"""

from __future__ import annotations

import csv
import enum
import io
import itertools
import math
from dataclasses import dataclass

from .dynamics import iterate, normalise_alpha
from .errors import InvalidParameter
from .funcspace import as_function
from .qmetric import DEFAULT_N, dc

EXACT_LIMIT = 12


class Variant(enum.Enum):
    FORWARD = "forward"
    TWO_SIDED = "two-sided"


def _variant(v) -> Variant:
    return v if isinstance(v, Variant) else Variant(str(v).lower().replace("_", "-"))


def _iterates(variant, n):
    return range(0, n) if variant is Variant.FORWARD else range(-(n - 1), n)


def _sym_at(f, g, alpha, j, N):
    fj, gj = iterate(f, alpha, j), iterate(g, alpha, j)
    return min(1.0, max(dc(fj, gj, N).value, dc(gj, fj, N).value))


def iterated_metric(f, g, alpha, n: int, variant=Variant.FORWARD, N: int = DEFAULT_N) -> float:
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    f, g = as_function(f), as_function(g)
    alpha = normalise_alpha(alpha)
    variant = _variant(variant)
    return max(_sym_at(f, g, alpha, j, N) for j in _iterates(variant, n))


# --------------------------------------------------------------------------
# Covers
# --------------------------------------------------------------------------

def greedy_cover(size: int, close) -> list[int]:
    """Representatives chosen in index order; ``close(i, j)`` means within eps."""
    reps = []
    for i in range(size):
        if not any(close(i, r) for r in reps):
            reps.append(i)
    return reps


def exact_cover(size: int, close) -> list[int]:
    """A minimum-cardinality set of representatives, by exhaustive search."""
    if size > EXACT_LIMIT:
        raise InvalidParameter(f"exhaustive cover is limited to |K| <= {EXACT_LIMIT}")
    for r in range(1, size + 1):
        for reps in itertools.combinations(range(size), r):
            if all(any(i == c or close(i, c) for c in reps) for i in range(size)):
                return list(reps)
    return list(range(size))


class _PairTable:
    """dc_sym between iterates of every pair in K, computed once per j."""

    def __init__(self, K, alpha, N):
        self.K = K
        self.alpha = alpha
        self.N = N
        self._cache = {}

    def at(self, i, k, j):
        key = (min(i, k), max(i, k), j)
        if key not in self._cache:
            self._cache[key] = _sym_at(self.K[key[0]], self.K[key[1]], self.alpha, j, self.N)
        return self._cache[key]

    def d_n(self, i, k, n, variant):
        return max(self.at(i, k, j) for j in _iterates(variant, n))


def _prepare(K, alpha, epsilon):
    K = [as_function(f) for f in K]
    if not K:
        raise InvalidParameter("K must be non-empty")
    if not epsilon > 0:
        raise InvalidParameter("epsilon must be positive")
    return K, normalise_alpha(alpha)


def _spanning(table, n, epsilon, variant, method):
    size = len(table.K)

    def close(i, k):
        return i == k or table.d_n(i, k, n, variant) < epsilon

    cover = exact_cover if method == "exact" else greedy_cover
    return len(cover(size, close))


def spanning_number(K, n: int, epsilon: float, alpha, variant=Variant.FORWARD,
                    N: int = DEFAULT_N, method: str = "greedy") -> int:
    """r(n, eps): size of an (n, eps)-spanning subset of K.

    ``method="greedy"`` walks K in input order and keeps every point with no
    representative strictly within eps; it is an upper bound on the true
    minimum.  ``method="exact"`` searches exhaustively (|K| <= 12).
    """
    if n < 1:
        raise InvalidParameter("n must be >= 1")
    if method not in ("greedy", "exact"):
        raise InvalidParameter(f"unknown cover method {method!r}")
    K, alpha = _prepare(K, alpha, epsilon)
    return _spanning(_PairTable(K, alpha, N), n, epsilon, _variant(variant), method)


def ls_slope(xs, ys) -> float:
    """Least-squares slope; exactly 0.0 for constant ys."""
    if len(xs) < 2:
        return 0.0
    x_mean = sum(xs) / len(xs)
    y0 = ys[0]
    num = sum((x - x_mean) * (y - y0) for x, y in zip(xs, ys))
    den = sum((x - x_mean) ** 2 for x in xs)
    return num / den


@dataclass(frozen=True)
class EntropyEstimate:
    spanning_counts: tuple[tuple[int, int], ...]
    slope: float
    window_slope: float
    window: tuple[int, int] | None
    epsilon: float
    alpha: float
    variant: Variant
    method: str = "greedy"

    def to_dict(self):
        return {
            "spanning_counts": [{"n": n, "r": r} for n, r in self.spanning_counts],
            "slope": self.slope,
            "window_slope": self.window_slope,
            "window": list(self.window) if self.window else None,
            "epsilon": self.epsilon,
            "alpha": self.alpha,
            "variant": self.variant.value,
            "method": self.method,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("n", "r"))
        writer.writerows(self.spanning_counts)
        return buf.getvalue()


def pre_saturation_window(counts):
    """(first, last) n strictly before r first reaches its final value, or None."""
    final = counts[-1][1]
    before = [n for n, r in itertools.takewhile(lambda nr: nr[1] != final, counts)]
    return (before[0], before[-1]) if before else None


def entropy_estimate(K, alpha, epsilon: float, n_max: int, variant=Variant.TWO_SIDED,
                     N: int = DEFAULT_N, method: str = "greedy") -> EntropyEstimate:
    """Spanning numbers r(n, eps) for n = 1..n_max and the growth slope of ln r.

    ``slope`` is fitted over the whole range; ``window_slope`` only over the
    n before r first equals its final value (0.0 when that window has fewer
    than two points).
    """
    if n_max < 4:
        raise InvalidParameter("n_max must be >= 4")
    if method not in ("greedy", "exact"):
        raise InvalidParameter(f"unknown cover method {method!r}")
    K, alpha = _prepare(K, alpha, epsilon)
    variant = _variant(variant)
    table = _PairTable(K, alpha, N)
    counts = tuple((n, _spanning(table, n, epsilon, variant, method)) for n in range(1, n_max + 1))

    xs = [n for n, _ in counts]
    ys = [math.log(r) for _, r in counts]
    window = pre_saturation_window(counts)
    if window:
        lo, hi = window
        w_slope = ls_slope(xs[lo - 1:hi], ys[lo - 1:hi])
    else:
        w_slope = 0.0
    return EntropyEstimate(counts, ls_slope(xs, ys), w_slope, window, epsilon, alpha, variant, method)
