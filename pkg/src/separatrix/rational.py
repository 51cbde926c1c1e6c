"""Univariate rational functions over Q(i) and their residues."""

from __future__ import annotations

from .gaussian import ZERO, GaussRational, Scalar
from .polynomial import UniPoly, uni_gcd


class UniRat:
    """A reduced fraction num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly = UniPoly([1])):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = uni_gcd(num, den) if num else den.monic()
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading().inverse()
        object.__setattr__(self, "num", num.scale(lead))
        object.__setattr__(self, "den", den.scale(lead))

    def __setattr__(self, name, value):
        raise AttributeError("UniRat is immutable")

    def __eq__(self, other):
        if not isinstance(other, UniRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "UniRat") -> "UniRat":
        return UniRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "UniRat") -> "UniRat":
        return UniRat(self.num * other.num, self.den * other.den)

    def __call__(self, t):
        return self.num(t) / self.den(t)

    def translate(self, c: Scalar) -> "UniRat":
        """r(t + c)."""
        shift = UniPoly([c, 1])
        n = max(self.num.degree, self.den.degree) + 1
        return UniRat(self.num.compose_trunc(shift, n), self.den.compose_trunc(shift, n))

    def __repr__(self):
        return f"UniRat({self.num!r} / {self.den!r})"


def residue_at_origin(r: UniRat) -> GaussRational:
    """Coefficient of 1/t in the Laurent expansion of r at 0."""
    k = r.den.order()
    if not k:
        return ZERO
    unit = r.den.shift_down(k)
    series = r.num.mul_trunc(unit.series_inverse(k), k)
    return series[k - 1]


def residue_at(r: UniRat, c: Scalar) -> GaussRational:
    return residue_at_origin(r.translate(c))


def residue_at_infinity(r: UniRat) -> GaussRational:
    """Residue of r(t) dt at infinity, i.e. minus the sum of all finite residues."""
    if r.num.is_zero():
        return ZERO
    dn, dd = r.num.degree, r.den.degree
    num_rev, den_rev = r.num.reverse(), r.den.reverse()
    e = dd - dn - 2
    if e >= 0:
        w = UniRat(num_rev.shift_up(e), den_rev)
    else:
        w = UniRat(num_rev, den_rev.shift_up(-e))
    return -residue_at_origin(w)
