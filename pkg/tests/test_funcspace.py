import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqspace.errors import DomainError, ExpressionSyntaxError, UnknownIdentifier
from cqspace.funcspace import (
    BinOp,
    Call,
    Factorial,
    Neg,
    Num,
    Var,
    as_function,
    dominates,
    evaluate,
    log_evaluate,
    parse_expression,
    parse_function,
    reciprocal,
    serialise,
)

from conftest import CORPUS, CORPUS_EXPRS

REFERENCE_FUNCTIONS = [
    "n", "n^2", "n^3", "n+1", "2*n", "1", "1/n", "sqrt(n)", "log(n+1)",
    "n*log(n+1)^2", "n + (-1)^(n+1)", "2^n", "n^100", "n*log(n+1)",
]


# -- parsing ----------------------------------------------------------------

def test_power_node():
    assert parse_expression("n^2") == BinOp("^", Var(), Num(2))


def test_product_with_squared_log():
    log_term = Call("log", BinOp("+", Var(), Num(1)))
    assert parse_expression("n*log(n+1)^2") == BinOp("*", Var(), BinOp("^", log_term, Num(2)))


def test_bad_character_reports_offset():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_function("n @ 2")
    assert info.value.position == 2


@pytest.mark.parametrize("text", ["", "   ", "(n", "n +", "n)", "log n", "2 3", "*n"])
def test_malformed(text):
    with pytest.raises(ExpressionSyntaxError):
        parse_function(text)


@pytest.mark.parametrize("text", ["m+1", "ln(n)", "sin(n)"])
def test_unknown_identifier(text):
    with pytest.raises(UnknownIdentifier):
        parse_function(text)


def test_precedence():
    # '!' binds tighter than '^', which binds tighter than unary minus
    assert parse_expression("-n^2") == Neg(BinOp("^", Var(), Num(2)))
    assert parse_expression("n!^2") == BinOp("^", Factorial(Var()), Num(2))
    assert parse_expression("1+2*n") == BinOp("+", Num(1), BinOp("*", Num(2), Var()))
    assert evaluate(parse_function("2^3^2"), 1) == 512
    assert evaluate(parse_function("2^-1*n"), 4) == 2


def test_fact_and_bang_agree():
    for n in range(1, 15):
        assert evaluate(parse_function("fact(n)"), n) == evaluate(parse_function("n!"), n) == math.factorial(n)


def test_as_function_accepts_both():
    f = parse_function("n^2")
    assert as_function(f) is f
    assert as_function("n^2") == f
    assert str(f) == "n^2"


# Grammar generator for round-trip testing.
_leaves = st.one_of(
    st.just("n"),
    st.integers(min_value=0, max_value=999).map(str),
    st.floats(min_value=0, max_value=100, allow_nan=False).map(lambda x: f"{x:.3f}"),
)


def _extend(inner):
    return st.one_of(
        st.tuples(inner, st.sampled_from("+-*/^"), inner).map(lambda t: f"{t[0]} {t[1]} {t[2]}"),
        inner.map(lambda e: f"-{e}"),
        inner.map(lambda e: f"({e})"),
        inner.map(lambda e: f"({e})!"),
        st.tuples(st.sampled_from(["log", "sqrt", "exp", "fact"]), inner).map(lambda t: f"{t[0]}({t[1]})"),
    )


expressions = st.recursive(_leaves, _extend, max_leaves=8)


@settings(max_examples=300, deadline=None)
@given(expressions)
def test_round_trip(text):
    tree = parse_expression(text)
    assert parse_expression(serialise(tree)) == tree


# -- evaluation -------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate(parse_function("n^2"), 3) == 9
    assert evaluate(parse_function("log(n+1)"), 1) == pytest.approx(math.log(2), abs=1e-15)
    assert [evaluate(parse_function("n + (-1)^(n+1)"), n) for n in range(1, 6)] == [2, 1, 4, 3, 6]


@pytest.mark.parametrize("text", ["n - 5", "log(n-1)", "sqrt(n-2)", "n - n", "0*n"])
def test_domain_errors_at_one(text):
    with pytest.raises(DomainError):
        evaluate(parse_function(text), 1)


def test_reciprocal_examples():
    assert reciprocal(parse_function("n"), 4) == 0.25
    assert reciprocal(parse_function("1/n"), 5) == pytest.approx(5, abs=1e-12)


def test_saturation():
    f = parse_function("2^n")
    assert evaluate(f, 2000) == math.inf
    assert reciprocal(f, 2000) == 0.0
    assert reciprocal(parse_function("n!"), 300) == 0.0
    assert reciprocal(parse_function("exp(n)"), 1000) == 0.0


def test_log_evaluate_past_saturation():
    assert log_evaluate(parse_function("2^n"), 2**16) == pytest.approx(2**16 * math.log(2), rel=1e-12)
    assert log_evaluate(parse_function("n*log(n)"), 2**300) == pytest.approx(
        300 * math.log(2) + math.log(300 * math.log(2)), rel=1e-12
    )


@pytest.mark.parametrize("text", REFERENCE_FUNCTIONS)
def test_reference_functions_positive_and_finite(text):
    f = parse_function(text)
    for n in range(1, 201):
        v = evaluate(f, n)
        assert 0 < v < math.inf
        assert reciprocal(f, n) * v == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("text", CORPUS_EXPRS)
def test_corpus_matches_python(text):
    f = parse_function(text)
    for n in range(1, 60):
        assert evaluate(f, n) == pytest.approx(CORPUS[text](n), rel=1e-12)


# -- dominance --------------------------------------------------------------

def test_dominance_examples():
    v = dominates("n", "n^2", 80)
    assert v.dominates_over_horizon and v.first_violation is None and v.horizon == 80
    v = dominates("n + (-1)^(n+1)", "n", 80)
    assert not v.dominates_over_horizon and v.first_violation == 1
    assert dominates("n", "n", 10).dominates_over_horizon


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CORPUS_EXPRS), st.sampled_from(CORPUS_EXPRS))
def test_mutual_dominance_means_equal(a, b):
    H = 40
    ab, ba = dominates(a, b, H), dominates(b, a, H)
    assert ab.dominates_over_horizon == (ab.first_violation is None)
    if ab.dominates_over_horizon and ba.dominates_over_horizon:
        fa, fb = parse_function(a), parse_function(b)
        assert all(evaluate(fa, n) == evaluate(fb, n) for n in range(1, H + 1))
