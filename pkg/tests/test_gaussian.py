from fractions import Fraction

import pytest
from hypothesis import given

from separatrix.gaussian import I, ONE, ZERO, GaussRational

from conftest import gaussians


@given(gaussians(), gaussians(), gaussians())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO
    if a:
        assert a * a.inverse() == ONE
        assert (b / a) * a == b


@given(gaussians())
def test_json_roundtrip(a):
    assert GaussRational.from_json(a.to_json()) == a


@given(gaussians())
def test_conjugate_norm(a):
    assert a * a.conjugate() == GaussRational(a.norm())


def test_i_squared():
    assert I * I == -ONE
    assert I ** -1 == -I
    assert (ONE + I) ** 4 == -4


def test_exact_str():
    assert GaussRational(6).exact_str() == "6/1 + 0/1·i"
    assert GaussRational(Fraction(-1, 12), Fraction(-1, 12)).exact_str() == "-1/12 - 1/12·i"


def test_rational_hash_matches_fraction():
    assert hash(GaussRational(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert GaussRational(2) == 2


def test_inexact_complex_rejected():
    with pytest.raises(TypeError):
        GaussRational.coerce(1.5j)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
