import pytest
from hypothesis import given

from separatrix.errors import ParseError
from separatrix.gaussian import GaussRational
from separatrix.parser import format_poly, parse_poly
from separatrix.polynomial import BiPoly

from conftest import bipolys


@given(bipolys(max_degree=5, max_terms=6))
def test_format_parse_roundtrip(p):
    assert parse_poly(format_poly(p)) == p


@pytest.mark.parametrize("text, terms", [
    ("y^2 - x^3", {(0, 2): 1, (3, 0): -1}),
    ("-x + 2*y", {(1, 0): -1, (0, 1): 2}),
    ("(1 + i)*x*y", {(1, 1): GaussRational(1, 1)}),
    ("1/3*x^2", {(2, 0): GaussRational("1/3")}),
    ("1/2*x + i*y", {(1, 0): GaussRational("1/2"), (0, 1): GaussRational(0, 1)}),
    ("(x + y)^2", {(2, 0): 1, (1, 1): 2, (0, 2): 1}),
    ("3/4", {(0, 0): GaussRational("3/4")}),
])
def test_examples(text, terms):
    assert parse_poly(text) == BiPoly(terms)


@pytest.mark.parametrize("text, column", [("x**y", 2), ("2x", 1), ("x +", 3), ("(x", 2), ("x ^ y", 4)])
def test_error_column(text, column):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.position == column
    assert f"column {column}" in str(info.value)


def test_format_zero_and_imaginary():
    assert format_poly(BiPoly()) == "0"
    assert format_poly(BiPoly({(0, 1): GaussRational(0, 1)})) == "i*y"
