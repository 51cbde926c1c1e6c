"""Roots in Q(i) of univariate polynomials, via factorization over Q(i)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

import sympy as sp

from .gaussian import GaussRational
from .polynomial import UniPoly

_t = sp.Symbol("t")


def _to_sympy(c: GaussRational):
    return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(
        c.im.numerator, c.im.denominator
    )


def _from_sympy(value) -> GaussRational:
    re, im = sp.re(value), sp.im(value)
    return GaussRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def gaussian_roots(p: UniPoly) -> Tuple[List[Tuple[GaussRational, int]], UniPoly]:
    """Distinct roots in Q(i) with multiplicities, and the monic cofactor
    collecting every irreducible factor of degree > 1."""
    if p.degree < 1:
        return [], UniPoly([1])
    expr = sum(_to_sympy(c) * _t**k for k, c in enumerate(p.coeffs))
    poly = sp.Poly(expr, _t, domain=sp.QQ_I)
    _, factors = poly.factor_list()
    roots: List[Tuple[GaussRational, int]] = []
    rest = UniPoly([1])
    for fac, mult in factors:
        coeffs = [_from_sympy(sp.sympify(c)) for c in reversed(fac.all_coeffs())]
        g = UniPoly(coeffs)
        if g.degree == 1:
            roots.append((-g[0] / g[1], mult))
        else:
            rest = rest * g.monic() ** mult
    roots.sort(key=lambda r: (r[0].re, r[0].im))
    return roots, rest
