"""Foliation germs, invariant branch germs and the invariance test."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import MixedTangentCone, NonvanishingAtOrigin, NotInvariant, ZeroPolynomial
from .gaussian import ONE, ZERO, GaussRational, Scalar
from .parser import format_poly, parse_poly
from .polynomial import BiPoly, bigcd, gcd_many, lowest_form

log = logging.getLogger(__name__)


class VectorFieldGerm:
    """The field P d/dx + Q d/dy, stored with gcd(P, Q) divided out."""

    __slots__ = ("P", "Q", "removed_factor")

    def __init__(self, P: BiPoly, Q: BiPoly, saturate: bool = True):
        if P.is_zero() and Q.is_zero():
            raise ZeroPolynomial("vector field with both components zero")
        removed = BiPoly.const(1)
        if saturate:
            g = bigcd(P, Q)
            if not g.is_constant():
                P, Q = P.exact_div(g), Q.exact_div(g)
                removed = g
                log.info("saturation removed common factor %s", g)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "removed_factor", removed)

    def __setattr__(self, name, value):
        raise AttributeError("VectorFieldGerm is immutable")

    @classmethod
    def parse(cls, P: str, Q: str) -> "VectorFieldGerm":
        return cls(parse_poly(P), parse_poly(Q))

    @property
    def singular_at_origin(self) -> bool:
        return not self.P.constant_term() and not self.Q.constant_term()

    def scale(self, c: Scalar) -> "VectorFieldGerm":
        return VectorFieldGerm(self.P.scale(c), self.Q.scale(c), saturate=False)

    def swap(self) -> "VectorFieldGerm":
        """The same field written in the coordinates (y, x)."""
        return VectorFieldGerm(self.Q.swap(), self.P.swap(), saturate=False)

    def apply(self, f: BiPoly) -> BiPoly:
        """Derivative of f along the field."""
        return self.P * f.diff_x() + self.Q * f.diff_y()

    def __eq__(self, other):
        if not isinstance(other, VectorFieldGerm):
            return NotImplemented
        return self.P == other.P and self.Q == other.Q

    def __hash__(self):
        return hash((self.P, self.Q))

    def to_json(self) -> dict:
        return {"P": format_poly(self.P), "Q": format_poly(self.Q)}

    def __repr__(self):
        return f"VectorFieldGerm(P={format_poly(self.P)!r}, Q={format_poly(self.Q)!r})"


@dataclass(frozen=True)
class TangentLine:
    """The line beta*x + gamma*y = 0; gamma is 1 when nonzero, otherwise beta is 1."""

    beta: GaussRational
    gamma: GaussRational

    def is_x_axis(self) -> bool:
        # the linear form is y
        return self.beta.is_zero()

    def is_y_axis(self) -> bool:
        # the linear form is x
        return self.gamma.is_zero()

    def form(self) -> BiPoly:
        return BiPoly({(1, 0): self.beta, (0, 1): self.gamma})

    def __str__(self):
        return format_poly(self.form())


class BranchGerm:
    """An irreducible invariant curve {f = 0} through the origin."""

    __slots__ = ("f", "_mult", "_tangent")

    def __init__(self, f: BiPoly, check_squarefree: bool = True):
        if f.is_zero():
            raise ZeroPolynomial("branch equation is zero")
        if f.constant_term():
            raise NonvanishingAtOrigin(f"branch {f} does not pass through the origin")
        if check_squarefree:
            g = gcd_many([f, f.diff_x(), f.diff_y()])
            if not g.is_constant():
                raise MixedTangentCone(f"branch equation is not squarefree (repeated factor {g})")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "_mult", None)
        object.__setattr__(self, "_tangent", None)

    def __setattr__(self, name, value):
        raise AttributeError("BranchGerm is immutable")

    @classmethod
    def parse(cls, text: str) -> "BranchGerm":
        return cls(parse_poly(text))

    @property
    def multiplicity(self) -> int:
        if self._mult is None:
            object.__setattr__(self, "_mult", lowest_form(self.f)[0])
        return self._mult

    def is_smooth(self) -> bool:
        return self.multiplicity == 1

    @property
    def tangent(self) -> TangentLine:
        if self._tangent is None:
            object.__setattr__(self, "_tangent", _tangent_of(self.f))
        return self._tangent

    def __eq__(self, other):
        if not isinstance(other, BranchGerm):
            return NotImplemented
        return self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"BranchGerm({format_poly(self.f)!r})"


def multiplicity(S: BranchGerm) -> int:
    return S.multiplicity


def tangent_line(S: BranchGerm) -> TangentLine:
    return S.tangent


def _tangent_of(f: BiPoly) -> TangentLine:
    m, h = lowest_form(f)
    lead = h.coefficient(0, m)
    if lead:
        beta = h.coefficient(1, m - 1) / (lead * m)
        line = TangentLine(beta, ONE)
    else:
        lead = h.coefficient(m, 0)
        line = TangentLine(ONE, ZERO)
    if not lead or line.form() ** m * lead != h:
        raise MixedTangentCone(f"tangent cone {h} is not a power of a single line")
    return line


def cofactor(F: VectorFieldGerm, S: BranchGerm) -> BiPoly:
    """g with P f_x + Q f_y = g f; raises NotInvariant if none exists."""
    q, r = F.apply(S.f).divmod(S.f)
    if r:
        raise NotInvariant(f"{format_poly(S.f)} is not invariant for {F!r}")
    return q


def is_invariant(F: VectorFieldGerm, f: BiPoly) -> bool:
    return not F.apply(f).divmod(f)[1]
