"""Running-time functions n -> (0, inf) given as small arithmetic expressions.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := postfix ('^' unary)?          # right-associative
    postfix := atom '!'*
    atom    := number | 'n' | name '(' expr ')' | '(' expr ')'
    name    := 'log' | 'sqrt' | 'exp' | 'fact'

``log`` is the natural logarithm.  Integer sub-expressions are evaluated
exactly, so ``(-1)^(n+1)`` alternates cleanly; anything that overflows the
float range saturates to ``math.inf``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .errors import DomainError, ExpressionSyntaxError, UnknownIdentifier

FUNCTION_NAMES = ("log", "sqrt", "exp", "fact")

# Largest exponent bit-count we let exact integer powers reach before
# declaring the result infinite (float range ends at 2**1024).
_MAX_POW_BITS = 1100
_MAX_EXACT_FACTORIAL = 170


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Union[int, float]


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"


@dataclass(frozen=True)
class Factorial:
    operand: "Node"


Node = Union[Num, Var, Neg, BinOp, Call, Factorial]


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^!()])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, op):
        return self.tok[0] == "op" and self.tok[1] == op

    def expect(self, value):
        kind, text, pos = self.tok
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ExpressionSyntaxError(f"expected {value!r}, found {found}", pos)
        self.advance()

    def parse(self):
        node = self.expr()
        kind, text, pos = self.tok
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected {text!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.postfix()
        if self.at("^"):
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def postfix(self):
        node = self.atom()
        while self.at("!"):
            self.advance()
            node = Factorial(node)
        return node

    def atom(self):
        kind, text, pos = self.tok
        if kind == "number":
            self.advance()
            if re.fullmatch(r"\d+", text):
                return Num(int(text))
            return Num(float(text))
        if kind == "name":
            self.advance()
            if text == "n":
                return Var()
            if text not in FUNCTION_NAMES:
                raise UnknownIdentifier(f"unknown identifier {text!r}", pos)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(text, arg)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ExpressionSyntaxError(f"expected a number, 'n', a function or '(', found {found}", pos)


def parse_expression(text: str) -> Node:
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(text).parse()


def serialise(node: Node) -> str:
    """Render an AST back to grammar text; compound nodes are parenthesised."""
    match node:
        case Num(value):
            return str(value) if isinstance(value, int) else repr(float(value))
        case Var():
            return "n"
        case Neg(operand):
            return f"(-{serialise(operand)})"
        case BinOp(op, left, right):
            return f"({serialise(left)} {op} {serialise(right)})"
        case Call(name, arg):
            return f"{name}({serialise(arg)})"
        case Factorial(operand):
            inner = serialise(operand)
            if isinstance(operand, Num) and isinstance(operand.value, float):
                inner = f"({inner})"
            return f"{inner}!"
    raise TypeError(f"not an expression node: {node!r}")


# --------------------------------------------------------------------------
# ComplexityFunction
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexityFunction:
    source: str
    ast: Node

    @classmethod
    def from_ast(cls, ast: Node) -> "ComplexityFunction":
        return cls(serialise(ast), ast)

    def __call__(self, n: int) -> float:
        return evaluate(self, n)

    def __str__(self):
        return self.source

    def values(self, N: int) -> tuple[float, ...]:
        """f(1), ..., f(N); cached per expression tree."""
        return _tabulate(self.ast, N)

    def reciprocals(self, N: int) -> tuple[float, ...]:
        return _tabulate_reciprocals(self.ast, N)


def parse_function(expr: str) -> ComplexityFunction:
    return ComplexityFunction(expr, parse_expression(expr))


def as_function(f) -> ComplexityFunction:
    """Accept either a ComplexityFunction or expression text."""
    if isinstance(f, ComplexityFunction):
        return f
    if isinstance(f, str):
        return parse_function(f)
    raise TypeError(f"expected an expression or ComplexityFunction, got {type(f).__name__}")


# --------------------------------------------------------------------------
# Direct evaluation
# --------------------------------------------------------------------------

def _fit(x):
    # Exact ints stay exact while they can still be turned into a float.
    if isinstance(x, int) and x.bit_length() > 1023:
        try:
            float(x)
        except OverflowError:
            return math.inf if x > 0 else -math.inf
    return x


def _is_integral(x):
    return isinstance(x, int) or (isinstance(x, float) and math.isfinite(x) and x.is_integer())


def _power(a, b, n):
    if isinstance(a, int) and isinstance(b, int):
        if b >= 0:
            if abs(a) > 1 and b * math.log2(abs(a)) > _MAX_POW_BITS:
                return -math.inf if (a < 0 and b % 2) else math.inf
            return _fit(a**b)
        if a == 0:
            raise DomainError(f"0 raised to a negative power at n={n}")
        return a**b
    a, b = float(a), float(b)
    try:
        return math.pow(a, b)
    except OverflowError:
        negative = a < 0 and b.is_integer() and int(b) % 2 == 1
        return -math.inf if negative else math.inf
    except ValueError:
        raise DomainError(f"{a!r} ^ {b!r} is undefined at n={n}") from None


def _factorial(x, n):
    if isinstance(x, float) and math.isnan(x):
        raise DomainError(f"factorial of nan at n={n}")
    if x == math.inf:
        return math.inf
    if _is_integral(x):
        k = int(x)
        if k < 0:
            raise DomainError(f"factorial of negative integer {k} at n={n}")
        if k > _MAX_EXACT_FACTORIAL:
            return math.inf
        return math.factorial(k)
    if x <= -1:
        raise DomainError(f"factorial of {x!r} at n={n}")
    try:
        return math.gamma(x + 1)
    except OverflowError:
        return math.inf


def _eval(node, n):
    match node:
        case Num(value):
            return value
        case Var():
            return n
        case Neg(operand):
            return -_eval(operand, n)
        case BinOp(op, left, right):
            a = _eval(left, n)
            b = _eval(right, n)
            if op == "^":
                return _power(a, b, n)
            if op == "/":
                if b == 0:
                    raise DomainError(f"division by zero at n={n}")
                try:
                    return a / b
                except OverflowError:
                    return math.copysign(math.inf, a) * math.copysign(1, b)
            if op == "+":
                return _fit(a + b)
            if op == "-":
                return _fit(a - b)
            return _fit(a * b)
        case Call(name, arg):
            x = _eval(arg, n)
            if name == "log":
                if not x > 0:
                    raise DomainError(f"log of non-positive value {x!r} at n={n}")
                return math.log(x) if x != math.inf else math.inf
            if name == "sqrt":
                if x < 0 or (isinstance(x, float) and math.isnan(x)):
                    raise DomainError(f"sqrt of negative value {x!r} at n={n}")
                return math.sqrt(x) if x != math.inf else math.inf
            if name == "exp":
                try:
                    return math.exp(x)
                except OverflowError:
                    return math.inf
            return _factorial(x, n)
        case Factorial(operand):
            return _factorial(_eval(operand, n), n)
    raise TypeError(f"not an expression node: {node!r}")


def _evaluate_node(ast, n):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    try:
        value = float(_eval(ast, n))
    except OverflowError:
        value = math.inf
    if math.isnan(value):
        raise DomainError(f"value undefined at n={n}")
    if value <= 0:
        raise DomainError(f"value {value!r} at n={n} is not in (0, inf)")
    return value


def evaluate(f: ComplexityFunction, n: int) -> float:
    """f(n) as a positive float; ``math.inf`` when the true value overflows."""
    return _evaluate_node(f.ast, n)


def reciprocal(f: ComplexityFunction, n: int) -> float:
    value = evaluate(f, n)
    return 0.0 if value == math.inf else 1.0 / value


@lru_cache(maxsize=8192)
def _tabulate(ast, N):
    return tuple(_evaluate_node(ast, n) for n in range(1, N + 1))


@lru_cache(maxsize=8192)
def _tabulate_reciprocals(ast, N):
    return tuple(0.0 if v == math.inf else 1.0 / v for v in _tabulate(ast, N))


# --------------------------------------------------------------------------
# Log-space evaluation
# --------------------------------------------------------------------------
# Values are carried as (sign, log|x|) so that e.g. 2^n at n = 2**64 stays
# finite.  Used where only ln f(n) is needed.

_ZERO = (0, -math.inf)


def _slog_of(x):
    if x == 0:
        return _ZERO
    if isinstance(x, float) and math.isnan(x):
        raise DomainError("value undefined")
    return (1 if x > 0 else -1, math.log(abs(x)) if math.isfinite(x) else math.inf)


def _slog_value(s):
    sign, L = s
    if sign == 0:
        return 0
    try:
        return sign * math.exp(L)
    except OverflowError:
        return sign * math.inf


def _log1mexp(d):
    # log(1 - exp(-d)) for d > 0
    return math.log(-math.expm1(-d)) if d < 0.6931 else math.log1p(-math.exp(-d))


def _sadd(a, b):
    (sa, La), (sb, Lb) = a, b
    if sa == 0:
        return b
    if sb == 0:
        return a
    hi, lo = (a, b) if La >= Lb else (b, a)
    if hi[1] == math.inf:
        if lo[1] == math.inf and sa != sb:
            raise DomainError("inf - inf")
        return hi
    if sa == sb:
        return (sa, hi[1] + math.log1p(math.exp(lo[1] - hi[1])))
    if La == Lb:
        return _ZERO
    return (hi[0], hi[1] + _log1mexp(hi[1] - lo[1]))


def _value_of(node, n):
    """Real value of a sub-expression, exact where possible."""
    v = _eval(node, n)
    if isinstance(v, float) and math.isinf(v):
        return _slog_value(_slog(node, n))
    return v


def _slog(node, n):
    match node:
        case Num(value):
            return _slog_of(value)
        case Var():
            return (1, math.log(n))
        case Neg(operand):
            s, L = _slog(operand, n)
            return (-s, L)
        case BinOp(op, left, right):
            if op == "^":
                base = _slog(left, n)
                e = _value_of(right, n)
                if base[0] == 0:
                    if e > 0:
                        return _ZERO
                    raise DomainError(f"0 raised to a non-positive power at n={n}")
                if base[0] < 0:
                    if not _is_integral(e):
                        raise DomainError(f"negative base to non-integer power at n={n}")
                    sign = -1 if int(e) % 2 else 1
                else:
                    sign = 1
                if base[1] == 0:
                    return (sign, 0.0)
                return (sign, e * base[1])
            a, b = _slog(left, n), _slog(right, n)
            if op == "+":
                return _sadd(a, b)
            if op == "-":
                return _sadd(a, (-b[0], b[1]))
            if op == "*":
                if a[0] == 0 or b[0] == 0:
                    return _ZERO
                return (a[0] * b[0], a[1] + b[1])
            if b[0] == 0:
                raise DomainError(f"division by zero at n={n}")
            if a[0] == 0:
                return _ZERO
            return (a[0] * b[0], a[1] - b[1])
        case Call(name, arg):
            if name == "log":
                s, L = _slog(arg, n)
                if s <= 0:
                    raise DomainError(f"log of non-positive value at n={n}")
                return _slog_of(L)
            if name == "sqrt":
                s, L = _slog(arg, n)
                if s < 0:
                    raise DomainError(f"sqrt of negative value at n={n}")
                return (s, L / 2)
            if name == "exp":
                return (1, _value_of(arg, n))
            return _slog_factorial(_value_of(arg, n), n)
        case Factorial(operand):
            return _slog_factorial(_value_of(operand, n), n)
    raise TypeError(f"not an expression node: {node!r}")


def _slog_factorial(x, n):
    if x == math.inf:
        return (1, math.inf)
    if _is_integral(x) and x < 0:
        raise DomainError(f"factorial of negative integer at n={n}")
    if x <= -1:
        raise DomainError(f"factorial of {x!r} at n={n}")
    return (1, math.lgamma(x + 1))


def log_evaluate(f: ComplexityFunction, n: int) -> float:
    """ln f(n), finite even when f(n) itself overflows a float."""
    try:
        value = evaluate(f, n)
    except OverflowError:
        value = math.inf
    if math.isfinite(value):
        return math.log(value)
    sign, L = _slog(f.ast, n)
    if sign <= 0:
        raise DomainError(f"value at n={n} is not in (0, inf)")
    return L


# --------------------------------------------------------------------------
# Dominance
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DominanceVerdict:
    dominates_over_horizon: bool
    first_violation: int | None
    horizon: int


def dominates(f, g, horizon: int) -> DominanceVerdict:
    """Check f(n) <= g(n) for n = 1..horizon, comparing computed values exactly."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    f, g = as_function(f), as_function(g)
    for n, (fv, gv) in enumerate(zip(f.values(horizon), g.values(horizon)), start=1):
        if fv > gv:
            return DominanceVerdict(False, n, horizon)
    return DominanceVerdict(True, None, horizon)
