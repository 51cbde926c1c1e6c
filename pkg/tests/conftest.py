from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from separatrix.gaussian import GaussRational
from separatrix.polynomial import BiPoly, UniPoly

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-9, max_value=9, max_denominator=7)


@st.composite
def gaussians(draw, real_only=False):
    re = draw(small_fractions)
    im = Fraction(0) if real_only else draw(small_fractions)
    return GaussRational(re, im)


@st.composite
def bipolys(draw, max_degree=3, max_terms=5, min_order=0):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(0, max_degree))
        j = draw(st.integers(0, max_degree - i))
        if i + j < min_order:
            continue
        terms[(i, j)] = draw(gaussians())
    return BiPoly(terms)


@st.composite
def unipolys(draw, max_degree=5):
    return UniPoly(draw(st.lists(gaussians(), max_size=max_degree + 1)))


@pytest.fixture
def cusp_text():
    return "y^2 - x^3"


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
