"""Time-hierarchy gap heuristics and the orbit separation they imply.

The gap condition f(n) log f(n) = o(g(n)) cannot be decided from samples,
so ``gap_check`` applies an explicit, configurable rule to the ratio
r(n) = f(n) ln f(n) / g(n) at n = 2, 4, 8, ... and is allowed to answer
INCONCLUSIVE.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import asdict, dataclass

from .dynamics import Direction, SeparationResult, check_expansive
from .errors import DomainError, InvalidParameter
from .funcspace import as_function, log_evaluate
from .qmetric import DEFAULT_N

# The ratio for (n, n log^2(n+1)) is ~1/ln n, which only drops below 0.01
# once n passes 2^145; 256 doublings reach it with room to spare.
DEFAULT_GAP_POINTS = 256


class GapVerdict(enum.Enum):
    GAP_HOLDS = "GAP_HOLDS"
    GAP_FAILS = "GAP_FAILS"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class GapRule:
    tail: int = 5
    holds_below: float = 0.01
    fails_above: float = 0.1


@dataclass(frozen=True)
class GapSample:
    n: int
    log_ratio: float

    @property
    def ratio(self) -> float:
        try:
            return math.exp(self.log_ratio)
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class GapTrace:
    samples: tuple[GapSample, ...]
    verdict: GapVerdict
    skipped: int = 0
    rule: GapRule = GapRule()

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "skipped": self.skipped,
            "rule": asdict(self.rule),
            "samples": [{"n": s.n, "ratio": s.ratio, "log_ratio": s.log_ratio} for s in self.samples],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("n", "ratio"))
        for s in self.samples:
            writer.writerow((s.n, repr(s.ratio)))
        return buf.getvalue()


def _log_gap_ratio(f, g, n):
    lf = log_evaluate(f, n)
    if not lf > 0:
        raise DomainError(f"f({n}) <= 1, so ln f({n}) is not positive")
    return lf + math.log(lf) - log_evaluate(g, n)


def decide(log_ratios, rule: GapRule = GapRule()) -> GapVerdict:
    if len(log_ratios) < rule.tail:
        return GapVerdict.INCONCLUSIVE
    tail = log_ratios[-rule.tail:]
    pairs = list(zip(tail, tail[1:]))
    if all(b < a for a, b in pairs) and tail[-1] < math.log(rule.holds_below):
        return GapVerdict.GAP_HOLDS
    if all(b >= a for a, b in pairs) or min(tail) >= math.log(rule.fails_above):
        return GapVerdict.GAP_FAILS
    return GapVerdict.INCONCLUSIVE


def gap_check(f, g, n_points: int = DEFAULT_GAP_POINTS, rule: GapRule = GapRule()) -> GapTrace:
    """Sample the gap ratio at n = 2^i, i = 1..n_points, in log space.

    Leading samples where f(n) <= 1 or either function is undefined are
    skipped (and counted); a domain failure after the first good sample
    is raised.
    """
    if n_points < 4:
        raise InvalidParameter("n_points must be >= 4")
    f, g = as_function(f), as_function(g)
    samples = []
    skipped = 0
    for i in range(1, n_points + 1):
        n = 2**i
        try:
            lr = _log_gap_ratio(f, g, n)
        except DomainError:
            if samples:
                raise
            skipped += 1
            continue
        samples.append(GapSample(n, lr))
    verdict = decide([s.log_ratio for s in samples], rule)
    return GapTrace(tuple(samples), verdict, skipped, rule)


def hierarchy_separation(f, g, alpha, delta: float, M: int = 50, N: int = DEFAULT_N) -> SeparationResult:
    """Orbit separation in the symmetrized distance only."""
    return check_expansive(f, g, alpha, delta, M, N, directions=(Direction.SYMMETRIZED,))


@dataclass(frozen=True)
class HierarchyReport:
    gap: GapTrace
    separation: SeparationResult

    def to_dict(self):
        return {"gap": self.gap.to_dict(), "separation": self.separation.to_dict()}


def hierarchy_report(f, g, alpha, delta: float, M: int = 50, N: int = DEFAULT_N,
                     n_points: int = DEFAULT_GAP_POINTS) -> HierarchyReport:
    return HierarchyReport(gap_check(f, g, n_points), hierarchy_separation(f, g, alpha, delta, M, N))
