import numpy as np
import pytest

from convalg import FiniteSupportFunction, Monoid

NAT = Monoid.nat(1)
INT = Monoid.integers(1)
NAT2 = Monoid.nat(2)

# element ranges used by random instances; kept small so sumsets overlap
RANGES = {NAT: (0, 64), INT: (-32, 32), NAT2: (0, 8)}


def random_function(rng, monoid, max_support=32, lo=None, hi=None, integer=False):
    """Random finite-support function, coefficients in the closed unit disc (or small ints)."""
    lo = RANGES[monoid][0] if lo is None else lo
    hi = RANGES[monoid][1] if hi is None else hi
    size = int(rng.integers(0, max_support + 1))
    elems = rng.integers(lo, hi, (size, monoid.dim)).tolist()
    if integer:
        coeffs = (rng.integers(-5, 6, size) + 1j * rng.integers(-5, 6, size)).tolist()
    else:
        coeffs = (np.sqrt(rng.random(size)) * np.exp(2j * np.pi * rng.random(size))).tolist()
    terms = {tuple(a): c for a, c in zip(elems, coeffs)}
    return FiniteSupportFunction(monoid, terms)


def max_term_diff(f, g):
    ft, gt = f.terms, g.terms
    return max((abs(ft.get(a, 0j) - gt.get(a, 0j)) for a in ft.keys() | gt.keys()), default=0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
