"""Scaling dynamics psi_alpha(f) = alpha * f on the complexity space.

For alpha > 1 forward iterates contract dc by exactly 1/alpha per step and
backward iterates expand it by alpha; alpha = 1 is the identity and never
separates anything.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import asdict, dataclass, field

from .errors import InputsIndistinguishable, InvalidParameter, ScalingOverflow
from .funcspace import BinOp, ComplexityFunction, Neg, Num, as_function
from .qmetric import DEFAULT_N, dc, dc_sym


def normalise_alpha(alpha):
    alpha = float(alpha) if not isinstance(alpha, int) else alpha
    if not alpha > 0 or not math.isfinite(alpha):
        raise InvalidParameter(f"alpha must be a positive finite real, got {alpha!r}")
    # Integral factors stay ints so that alpha**k is exact.
    if isinstance(alpha, float) and alpha.is_integer():
        return int(alpha)
    return alpha


@dataclass(frozen=True)
class ScalingMap:
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", normalise_alpha(self.alpha))

    def __call__(self, f):
        return scale(f, self.alpha)

    def compose(self, other: "ScalingMap") -> "ScalingMap":
        return ScalingMap(self.alpha * other.alpha)

    def inverse(self) -> "ScalingMap":
        return ScalingMap(1 / self.alpha)

    def power(self, f, k: int):
        return iterate(f, self.alpha, k)


def scale(f, alpha) -> ComplexityFunction:
    """alpha * f as a product node."""
    f = as_function(f)
    alpha = normalise_alpha(alpha)
    return ComplexityFunction.from_ast(BinOp("*", Num(alpha), f.ast))


def _int_node(k):
    return Num(k) if k >= 0 else Neg(Num(-k))


def _node_int(node):
    if isinstance(node, Num) and isinstance(node.value, int):
        return node.value
    if isinstance(node, Neg) and isinstance(node.operand, Num) and isinstance(node.operand.value, int):
        return -node.operand.value
    return None


def _split_iterate(ast, alpha):
    """If ast is ``alpha^j * inner`` return (j, inner), else (0, ast)."""
    if isinstance(ast, BinOp) and ast.op == "*" and isinstance(ast.left, BinOp) and ast.left.op == "^":
        base, exponent = ast.left.left, ast.left.right
        j = _node_int(exponent)
        if isinstance(base, Num) and base.value == alpha and type(base.value) is type(alpha) and j is not None:
            return j, ast.right
    return 0, ast


def scale_factor(alpha, k: int):
    """alpha**k, refusing results that are not finite non-zero floats."""
    alpha = normalise_alpha(alpha)
    try:
        factor = alpha**k
        as_float = float(factor)
    except OverflowError:
        raise ScalingOverflow(f"{alpha}^{k} overflows") from None
    if as_float == 0.0 or not math.isfinite(as_float):
        raise ScalingOverflow(f"{alpha}^{k} is not representable")
    return factor


def iterate(f, alpha, k: int) -> ComplexityFunction:
    """psi_alpha^k(f) = alpha^k * f, built as a single scale.

    Iterating an iterate of the same map folds the exponents, so the group
    law psi^a(psi^b(f)) = psi^(a+b)(f) holds exactly, value for value.
    """
    f = as_function(f)
    alpha = normalise_alpha(alpha)
    j, inner = _split_iterate(f.ast, alpha)
    total = j + k
    scale_factor(alpha, total)
    if total == 0:
        return ComplexityFunction.from_ast(inner) if j else f
    return ComplexityFunction.from_ast(BinOp("*", BinOp("^", Num(alpha), _int_node(total)), inner))


def lipschitz_residual(f, g, alpha, N: int = DEFAULT_N) -> float:
    """|dc(alpha f, alpha g) - dc(f, g) / alpha|; zero up to rounding."""
    f, g = as_function(f), as_function(g)
    scaled = dc(scale(f, alpha), scale(g, alpha), N).value
    return abs(scaled - dc(f, g, N).value / alpha)


# --------------------------------------------------------------------------
# Orbit traces
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitRow:
    k: int
    d_fg: float
    d_gf: float
    d_sym: float
    theoretical_fg: float | None = None


@dataclass(frozen=True)
class OrbitTrace:
    rows: tuple[OrbitRow, ...]
    alpha: float | None
    truncation_N: int
    shift: float | None = None

    CSV_HEADER = ("k", "d_fg", "d_gf", "d_sym", "theoretical_fg")

    def column(self, name):
        return [getattr(r, name) for r in self.rows]

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "shift": self.shift,
            "truncation_N": self.truncation_N,
            "rows": [asdict(r) for r in self.rows],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.CSV_HEADER)
        for r in self.rows:
            writer.writerow([r.k, repr(r.d_fg), repr(r.d_gf), repr(r.d_sym),
                             "" if r.theoretical_fg is None else repr(r.theoretical_fg)])
        return buf.getvalue()


def _capped(x):
    return min(1.0, x)


def orbit_trace(f, g, alpha, k_min: int, k_max: int, N: int = DEFAULT_N) -> OrbitTrace:
    """Distances between psi^k(f) and psi^k(g) for k = k_min..k_max.

    Reported distances are capped at 1; ``theoretical_fg`` carries the
    uncapped alpha^-k * dc(f, g).
    """
    if k_min > k_max:
        raise InvalidParameter(f"k_min ({k_min}) must not exceed k_max ({k_max})")
    f, g = as_function(f), as_function(g)
    alpha = normalise_alpha(alpha)
    d0 = dc(f, g, N).value
    rows = []
    for k in range(k_min, k_max + 1):
        fk, gk = iterate(f, alpha, k), iterate(g, alpha, k)
        d_fg = dc(fk, gk, N).value
        d_gf = dc(gk, fk, N).value
        theory = d0 / float(scale_factor(alpha, k))
        rows.append(OrbitRow(k, _capped(d_fg), _capped(d_gf), _capped(max(d_fg, d_gf)), theory))
    return OrbitTrace(tuple(rows), alpha, N)


# --------------------------------------------------------------------------
# Expansiveness
# --------------------------------------------------------------------------

class Direction(enum.Enum):
    FORWARD_DC = "FORWARD_DC"
    CONJUGATE = "CONJUGATE"
    SYMMETRIZED = "SYMMETRIZED"


ALL_DIRECTIONS = (Direction.FORWARD_DC, Direction.CONJUGATE, Direction.SYMMETRIZED)


@dataclass(frozen=True)
class SeparationResult:
    found: bool
    at_iterate: int | None = None
    witness_direction: Direction | None = None
    distance: float | None = None
    predicted_iterate: int | None = None
    delta: float | None = None
    scanned: int = 0

    def to_dict(self):
        d = asdict(self)
        d["witness_direction"] = self.witness_direction.value if self.witness_direction else None
        return d


def scan_order(M: int):
    """0, 1, -1, 2, -2, ..., M, -M."""
    yield 0
    for m in range(1, M + 1):
        yield m
        yield -m


def check_expansive(f, g, alpha, delta: float, M: int, N: int = DEFAULT_N,
                    directions=ALL_DIRECTIONS) -> SeparationResult:
    """Look for an iterate |k| <= M at which the orbits of f and g are > delta apart.

    Iterates are scanned by increasing |k| (forward first at each
    magnitude), so the reported iterate is a minimal-magnitude witness.
    At each k the directions are tried in the order given.
    """
    if M < 0:
        raise InvalidParameter("M must be >= 0")
    if not delta > 0:
        raise InvalidParameter("delta must be positive")
    f, g = as_function(f), as_function(g)
    alpha = normalise_alpha(alpha)
    d_sym = dc_sym(f, g, N).value
    if d_sym == 0.0:
        raise InputsIndistinguishable(f"dc_sym({f}, {g}) = 0 at horizon N={N}")
    predicted = None
    if alpha != 1:
        predicted = separation_iterate(d_sym, max(alpha, 1 / alpha), delta)

    count = 0
    for k in scan_order(M):
        count += 1
        fk, gk = iterate(f, alpha, k), iterate(g, alpha, k)
        forward = dc(fk, gk, N).value
        backward = dc(gk, fk, N).value
        values = {
            Direction.FORWARD_DC: forward,
            Direction.CONJUGATE: backward,
            Direction.SYMMETRIZED: max(forward, backward),
        }
        for direction in directions:
            if values[direction] > delta:
                return SeparationResult(True, k, direction, values[direction], predicted, delta, count)
    return SeparationResult(False, predicted_iterate=predicted, delta=delta, scanned=count)


def separation_iterate(d: float, alpha: float, delta: float) -> int:
    """Smallest k >= 0 with alpha^k * d > delta.

    This is ceil(log_alpha(delta / d)), bumped by one in the boundary case
    where alpha^k * d lands exactly on delta.
    """
    if not d > 0:
        raise InvalidParameter(f"d must be positive, got {d!r}")
    if not alpha > 1:
        raise InvalidParameter(f"alpha must exceed 1, got {alpha!r}")
    if not delta > 0:
        raise InvalidParameter(f"delta must be positive, got {delta!r}")
    if d > delta:
        return 0
    k = max(math.ceil(math.log(delta / d) / math.log(alpha)), 0)
    # correct the float log in either direction
    while alpha**k * d <= delta:
        k += 1
    while k > 0 and alpha ** (k - 1) * d > delta:
        k -= 1
    return k


@dataclass(frozen=True)
class PairSeparation:
    d: float
    alpha: float
    delta: float
    iterate: int
    separated_distance: float = field(default=0.0)

    def to_dict(self):
        return asdict(self)


def pair_separation_iterate(f, g, alpha, delta: float, N: int = DEFAULT_N) -> PairSeparation:
    """Predicted separation iterate for a concrete pair, using d = dc_sym(f, g)."""
    alpha = normalise_alpha(alpha)
    if alpha == 1:
        raise InvalidParameter("alpha = 1 never separates orbits")
    d = dc_sym(f, g, N).value
    if d == 0.0:
        raise InputsIndistinguishable(f"dc_sym({f}, {g}) = 0 at horizon N={N}")
    rate = max(alpha, 1 / alpha)
    k = separation_iterate(d, rate, delta)
    return PairSeparation(d, alpha, delta, k, rate**k * d)


# --------------------------------------------------------------------------
# Translation (non-expansive comparison map)
# --------------------------------------------------------------------------

def translate(f, c: float) -> ComplexityFunction:
    if not c > 0:
        raise InvalidParameter(f"translation constant must be > 0, got {c!r}")
    f = as_function(f)
    return ComplexityFunction.from_ast(BinOp("+", f.ast, Num(c)))


def translation_orbit(f, g, c: float, k_max: int, N: int = DEFAULT_N) -> OrbitTrace:
    """dc between f + k*c and g + k*c for k = 0..k_max."""
    if not c > 0:
        raise InvalidParameter(f"translation constant must be > 0, got {c!r}")
    if k_max < 0:
        raise InvalidParameter("k_max must be >= 0")
    f, g = as_function(f), as_function(g)
    rows = []
    for k in range(k_max + 1):
        fk = f if k == 0 else translate(f, k * c)
        gk = g if k == 0 else translate(g, k * c)
        d_fg = dc(fk, gk, N).value
        d_gf = dc(gk, fk, N).value
        rows.append(OrbitRow(k, _capped(d_fg), _capped(d_gf), _capped(max(d_fg, d_gf))))
    return OrbitTrace(tuple(rows), None, N, shift=c)
