"""The complexity quasi-metric, its conjugate and symmetrization.

    dc(f, g) = sum_{n>=1} 2^-n * max(0, 1/g(n) - 1/f(n))

truncated after N terms.  Moving from a faster f to a slower g is free
(dc = 0 exactly when f <= g pointwise); the reverse costs something.

The reported ``error_bound`` of 2^-N bounds the omitted tail whenever
1/g(n) <= 1 for n > N, i.e. g(n) >= 1 beyond the horizon.  Functions that
dip below 1 (for instance scaled-down iterates) can push individual terms,
and hence the total, above the nominal bound of 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

from .errors import UnknownPair
from .funcspace import as_function

DEFAULT_N = 80

# Zero threshold for "numerically zero" distances that did not arise from
# exact dominance.
ZERO_TOL = 1e-15


@dataclass(frozen=True)
class DistanceResult:
    value: float
    truncation_N: int
    error_bound: float
    zero_by_dominance: bool

    def to_dict(self):
        return asdict(self)


def _check_N(N):
    if N < 1:
        raise ValueError(f"truncation N must be >= 1, got {N}")


def _terms(f, g, N):
    rf = f.reciprocals(N)
    rg = g.reciprocals(N)
    for n in range(1, N + 1):
        delta = rg[n - 1] - rf[n - 1]
        yield n, (math.ldexp(delta, -n) if delta > 0 else 0.0)


def dc(f, g, N: int = DEFAULT_N) -> DistanceResult:
    """Truncated complexity distance from f to g, summed in increasing n."""
    _check_N(N)
    f, g = as_function(f), as_function(g)
    total = 0.0
    all_zero = True
    for _, term in _terms(f, g, N):
        if term:
            all_zero = False
            total += term
    return DistanceResult(total, N, math.ldexp(1.0, -N), all_zero)


def dc_conjugate(f, g, N: int = DEFAULT_N) -> DistanceResult:
    return dc(g, f, N)


def dc_sym(f, g, N: int = DEFAULT_N) -> DistanceResult:
    forward = dc(f, g, N)
    backward = dc(g, f, N)
    return DistanceResult(
        max(forward.value, backward.value),
        N,
        forward.error_bound,
        forward.zero_by_dominance and backward.zero_by_dominance,
    )


def partial_sums(f, g, up_to: int) -> list[tuple[int, float]]:
    """Running sums S_1..S_up_to of the dc(f, g) series."""
    _check_N(up_to)
    f, g = as_function(f), as_function(g)
    out = []
    total = 0.0
    for n, term in _terms(f, g, up_to):
        total += term
        out.append((n, total))
    return out


class OraclePair(enum.Enum):
    QUAD_VS_LIN = "QUAD_VS_LIN"        # dc(n^2, n)
    DOUBLE_VS_LIN = "DOUBLE_VS_LIN"    # dc(2n, n)
    CONST_VS_RECIP = "CONST_VS_RECIP"  # dc(1, 1/n)
    SUCC_VS_LIN = "SUCC_VS_LIN"        # dc(n+1, n)


# The (f, g) expressions whose series each closed form sums.
ORACLE_PAIRS = {
    OraclePair.QUAD_VS_LIN: ("n^2", "n"),
    OraclePair.DOUBLE_VS_LIN: ("2*n", "n"),
    OraclePair.CONST_VS_RECIP: ("1", "1/n"),
    OraclePair.SUCC_VS_LIN: ("n+1", "n"),
}

LN2 = math.log(2.0)
# Li2(1/2) = pi^2/12 - (ln 2)^2 / 2
LI2_HALF = math.pi**2 / 12 - LN2**2 / 2


def closed_form_oracle(pair_id) -> float:
    """Exact value of dc for one of the four pairs with a known closed form.

    QUAD_VS_LIN: sum 2^-n (1/n - 1/n^2) = ln 2 - Li2(1/2)
    DOUBLE_VS_LIN: sum 2^-n / (2n) = (ln 2) / 2
    CONST_VS_RECIP: sum 2^-n (n - 1) = 1
    SUCC_VS_LIN: sum 2^-n / (n(n+1)) = 1 - ln 2 (telescoping against -ln(1-x))
    """
    try:
        pair = OraclePair(pair_id.value if isinstance(pair_id, OraclePair) else pair_id)
    except ValueError:
        raise UnknownPair(pair_id) from None
    return {
        OraclePair.QUAD_VS_LIN: LN2 - LI2_HALF,
        OraclePair.DOUBLE_VS_LIN: LN2 / 2,
        OraclePair.CONST_VS_RECIP: 1.0,
        OraclePair.SUCC_VS_LIN: 1.0 - LN2,
    }[pair]
