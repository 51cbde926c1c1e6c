import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from separatrix.gaussian import GaussRational
from separatrix.polynomial import UniPoly
from separatrix.rational import UniRat, residue_at, residue_at_infinity, residue_at_origin
from separatrix.roots import gaussian_roots

from conftest import gaussians, unipolys
from oracles import T, from_sympy_number, gauss_sympy, pole_residue


def _uni_sympy(p: UniPoly):
    return sum((gauss_sympy(c) * T**k for k, c in enumerate(p.coeffs)), sp.Integer(0))


def test_simple_poles():
    # 1/(t (t - 1)) has residue -1 at 0, 1 at 1, and 0 at infinity
    r = UniRat(UniPoly([1]), UniPoly([0, -1, 1]))
    assert residue_at_origin(r) == -1
    assert residue_at(r, 1) == 1
    assert residue_at_infinity(r) == 0


def test_higher_order_pole():
    # (1 + t)^3 / t^3 -> coefficient of t^2 in (1+t)^3 is 3
    r = UniRat(UniPoly([1, 3, 3, 1]), UniPoly([0, 0, 0, 1]))
    assert residue_at_origin(r) == 3
    assert residue_at_infinity(r) == -3


@given(unipolys(max_degree=3), st.lists(gaussians(), max_size=2), gaussians(), st.integers(1, 3))
def test_residue_against_sympy(num, others, c, order):
    assume(not num.is_zero() and c not in others)
    den = UniPoly([1])
    for v in others:
        den = den * UniPoly([-v, 1])
    den = den * UniPoly([-c, 1]) ** order
    expected = pole_residue(_uni_sympy(num) / _uni_sympy(den), gauss_sympy(c))
    assert residue_at(UniRat(num, den), c) == from_sympy_number(expected)


@given(unipolys(max_degree=3), st.lists(gaussians(), min_size=1, max_size=4))
def test_residue_theorem(num, poles):
    """Residues at finitely many poles and at infinity sum to zero."""
    assume(not num.is_zero())
    den = UniPoly([1])
    for v in poles:
        den = den * UniPoly([-v, 1])
    r = UniRat(num, den)
    total = sum((residue_at(r, v) for v in set(poles)), GaussRational(0))
    assert total + residue_at_infinity(r) == 0


@settings(max_examples=20)
@given(st.lists(gaussians(), min_size=1, max_size=4))
def test_gaussian_roots_recovered(values):
    p = UniPoly([1])
    for v in values:
        p = p * UniPoly([-v, 1])
    p = p * UniPoly([1, 0, 1]) * UniPoly([-2, 0, 1])  # t^2 + 1 splits, t^2 - 2 does not
    roots, rest = gaussian_roots(p)
    found = {v: m for v, m in roots}
    for v in set(values):
        assert found[v] >= values.count(v)
    assert found[GaussRational(0, 1)] >= 1 and found[GaussRational(0, -1)] >= 1
    assert rest == UniPoly([-2, 0, 1])
