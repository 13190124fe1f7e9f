import itertools
import math

import pytest

# Every function here is >= 1 on n >= 1, which keeps dc <= 1 and the 2^-N
# tail bound valid.  Each entry pairs the grammar text with an independent
# Python implementation used by the brute-force oracles.
CORPUS = {
    "1": lambda n: 1,
    "n": lambda n: n,
    "n+1": lambda n: n + 1,
    "2*n": lambda n: 2 * n,
    "3*n+2": lambda n: 3 * n + 2,
    "n^2": lambda n: n**2,
    "n^3": lambda n: n**3,
    "sqrt(n)": math.sqrt,
    "1+log(n)": lambda n: 1 + math.log(n),
    "2^n": lambda n: 2**n,
    "n!": math.factorial,
    "n + (-1)^(n+1)": lambda n: n + (-1) ** (n + 1),
}

CORPUS_EXPRS = tuple(CORPUS)
CORPUS_PAIRS = tuple(itertools.permutations(CORPUS_EXPRS, 2))


def brute_dc(f, g, N=80):
    """Series dc summed with fsum over plain Python callables."""
    return math.fsum(2.0**-n * max(0.0, 1 / g(n) - 1 / f(n)) for n in range(1, N + 1))


@pytest.fixture
def corpus():
    return CORPUS


# Acceptance criteria report: each criterion test appends one line here and
# the block is printed at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
