"""Exact Camacho-Sad indices of invariant curves.

For a smooth invariant branch straightened to {Y = 0} the index is the
residue at X = 0 of dQ/dY (X, 0) / P(X, 0).  Singular branches are handled
by blowing up until the strict transform is smooth and adding back m**2
for every blow-up performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .blowup import Chart, Scene, blow_up_field, blow_up_scene, translate_field
from .errors import (
    BranchNotSmooth,
    DegenerateAlongBranch,
    DicriticalDivisor,
    NotSingularThere,
    StepLimit,
)
from .gaussian import ZERO, GaussRational, Scalar
from .germ import BranchGerm, VectorFieldGerm, cofactor
from .polynomial import BiPoly, UniPoly
from .rational import UniRat, residue_at_infinity, residue_at_origin

# Largest truncation order tried when expanding the branch as a graph.
MAX_TRUNCATION = 4096


@dataclass(frozen=True)
class IndexValue:
    value: GaussRational
    blowups: Tuple[int, ...] = ()
    dicritical: bool = False

    def is_rational(self) -> bool:
        return self.value.is_rational()

    def __eq__(self, other):
        if isinstance(other, IndexValue):
            return self.value == other.value
        try:
            return self.value == GaussRational.coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)


# -- smooth branches -----------------------------------------------------------


def graph_series(f: BiPoly, n: int) -> UniPoly:
    """s(x) mod x**n with f(x, s(x)) = 0 and s(0) = 0; needs f_y(0, 0) != 0."""
    fy = f.diff_y()
    s = UniPoly()
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        value = f.along_graph(s, prec)
        slope = fy.along_graph(s, prec)
        s = (s - value.mul_trunc(slope.series_inverse(prec), prec)).truncate(prec)
    return s


def cs_index_smooth(F: VectorFieldGerm, S: BranchGerm) -> IndexValue:
    if not S.is_smooth():
        raise BranchNotSmooth(f"branch has multiplicity {S.multiplicity}")
    f = S.f
    P, Q = F.P, F.Q
    if not f.coefficient(0, 1):
        # tangent to the y-axis: exchange the roles of the coordinates
        f, P, Q = f.swap(), Q.swap(), P.swap()
    Py = P.diff_y()
    Qy = Q.diff_y()
    n = 4
    while n <= MAX_TRUNCATION:
        s = graph_series(f, n) if _needs_series(f) else _explicit_graph(f)
        along = P.along_graph(s, n)
        nu = along.order()
        if nu == 0:
            # regular point: the form is holomorphic there
            return IndexValue(ZERO)
        if nu is not None and 2 * nu <= n:
            ds = s.derivative()
            normal = Qy.along_graph(s, n) - ds.mul_trunc(Py.along_graph(s, n), n)
            num = normal.truncate(nu)
            den = along.truncate(2 * nu)
            return IndexValue(residue_at_origin(UniRat(num, den)))
        n *= 2
    raise DegenerateAlongBranch("the field vanishes identically along the branch")


def _needs_series(f: BiPoly) -> bool:
    # f = c*y - g(x) can be solved without iteration
    return any(j > 0 for (i, j) in f.terms if (i, j) != (0, 1))


def _explicit_graph(f: BiPoly) -> UniPoly:
    c = f.coefficient(0, 1)
    rest = f - BiPoly.monomial(0, 1, c)
    return -rest.restrict_y(0).scale(c.inverse())


def axis_index(F: VectorFieldGerm, axis: int) -> IndexValue:
    """Index of the coordinate axis {x = 0} (axis 0) or {y = 0} (axis 1)."""
    branch = BranchGerm(BiPoly.x() if axis == 0 else BiPoly.y(), check_squarefree=False)
    return cs_index_smooth(F, branch)


# -- singular branches ---------------------------------------------------------


def css_index_branch(F: VectorFieldGerm, S: BranchGerm, max_steps: int = 64) -> IndexValue:
    from .resolution import choose_centre

    cofactor(F, S)
    scene = Scene(field=F, branch=S)
    shifts = []
    dicritical = False
    while not scene.branch.is_smooth():
        if len(shifts) >= max_steps:
            raise StepLimit(f"branch still singular after {max_steps} blow-ups")
        chart, c = choose_centre(scene.branch)
        shifts.append(scene.branch.multiplicity)
        scene = blow_up_scene(scene, chart, c)
        dicritical = dicritical or scene.dicritical
    base = cs_index_smooth(scene.field, scene.branch).value
    total = base + sum(m * m for m in shifts)
    return IndexValue(total, tuple(shifts), dicritical)


# -- divisors ------------------------------------------------------------------


def divisor_index_at(F: VectorFieldGerm, axis: int, p: Tuple[Scalar, Scalar]) -> IndexValue:
    a, b = (GaussRational.coerce(t) for t in p)
    if (axis == 0 and a) or (axis == 1 and b):
        raise ValueError("point does not lie on the divisor")
    G = translate_field(F, (a, b))
    if G.P.constant_term() or G.Q.constant_term():
        raise NotSingularThere(f"the field is regular at ({a}, {b})")
    return axis_index(G, axis)


def divisor_index_sum_first_blowup(F: VectorFieldGerm) -> IndexValue:
    """Sum of the indices of all singular points on the first exceptional divisor."""
    G, _, dic = blow_up_field(F, Chart.U)
    if dic:
        raise DicriticalDivisor("the first blow-up is dicritical")
    a = G.P.div_monomial(1, 0).restrict_x(0)
    b = G.Q.restrict_x(0)
    total = -residue_at_infinity(UniRat(a, b))
    H, _, _ = blow_up_field(F, Chart.V)
    if not H.P.constant_term() and not H.Q.constant_term():
        total = total + axis_index(H, 1).value
    return IndexValue(total)


# -- membership tests ----------------------------------------------------------


@dataclass(frozen=True)
class PosRatOrZero:
    """iota in Q+ or iota = 0."""


@dataclass(frozen=True)
class NotInPosRat:
    """iota outside Q+ and nonzero (possibly non-real)."""


@dataclass(frozen=True)
class LeqRat:
    """iota rational and iota <= bound."""

    bound: Fraction


@dataclass(frozen=True)
class GeqRat:
    """iota rational and iota >= bound."""

    bound: Fraction


@dataclass(frozen=True)
class NotGeqRat:
    """iota is not a rational number >= bound."""

    bound: Fraction


Test = Union[PosRatOrZero, NotInPosRat, LeqRat, GeqRat, NotGeqRat]


def classify(iota: Union[IndexValue, GaussRational, Scalar], test: Test) -> bool:
    v = iota.value if isinstance(iota, IndexValue) else GaussRational.coerce(iota)
    rational = v.is_rational()
    if isinstance(test, PosRatOrZero):
        return rational and v.re >= 0
    if isinstance(test, NotInPosRat):
        return not (rational and v.re >= 0)
    if isinstance(test, LeqRat):
        return rational and v.re <= Fraction(test.bound)
    if isinstance(test, GeqRat):
        return rational and v.re >= Fraction(test.bound)
    if isinstance(test, NotGeqRat):
        return not (rational and v.re >= Fraction(test.bound))
    raise TypeError(f"unknown test {test!r}")
