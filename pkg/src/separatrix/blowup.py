"""Point blow-up in the two standard charts and scene bookkeeping.

Chart U is (x, y) = (u, u*v) with exceptional divisor {u = 0}; chart V is
(x, y) = (u*v, v) with exceptional divisor {v = 0}.  After a blow-up the
chart coordinates are renamed back to (x, y), so a divisor always sits on
one of the two coordinate axes of the working chart.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from .errors import MalformedScene, StrictTransformMissesOrigin
from .gaussian import ZERO, GaussRational, Scalar
from .germ import BranchGerm, VectorFieldGerm
from .polynomial import BiPoly


class Chart(enum.Enum):
    U = "U"
    V = "V"

    @property
    def exceptional_axis(self) -> int:
        """Coordinate index whose vanishing defines the new divisor."""
        return 0 if self is Chart.U else 1


class Age(enum.Enum):
    NEW = "new"
    OLD = "old"


class Intersection(enum.Enum):
    DOUBLE = "Double"
    TRIPLE = "Triple"


@dataclass(frozen=True)
class DivisorAxis:
    """An exceptional divisor through the working point.

    ``axis`` is 0 for the divisor {x = 0} and 1 for {y = 0}.
    """

    id: int
    axis: int
    birth_step: int
    age: Age
    self_intersection: int = -1

    def equation(self) -> BiPoly:
        return BiPoly.x() if self.axis == 0 else BiPoly.y()

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "axis": "x=0" if self.axis == 0 else "y=0",
            "birth_step": self.birth_step,
            "age": self.age.value,
            "self_intersection": self.self_intersection,
        }


@dataclass(frozen=True)
class SceneType:
    kind: Intersection
    old: Optional[DivisorAxis] = None
    new: Optional[DivisorAxis] = None


@dataclass(frozen=True)
class Scene:
    field: VectorFieldGerm
    branch: BranchGerm
    divisors: Tuple[DivisorAxis, ...] = ()
    step: int = 0
    dicritical: bool = False

    def divisor_on_axis(self, axis: int) -> Optional[DivisorAxis]:
        for d in self.divisors:
            if d.axis == axis:
                return d
        return None

    def tangent_divisor(self) -> Optional[DivisorAxis]:
        """The divisor whose axis is the tangent line of the branch, if any."""
        t = self.branch.tangent
        for d in self.divisors:
            if (d.axis == 0 and t.is_y_axis()) or (d.axis == 1 and t.is_x_axis()):
                return d
        return None


def _pull_back(f: BiPoly, chart: Chart, c: GaussRational = ZERO) -> BiPoly:
    x, y = BiPoly.x(), BiPoly.y()
    if chart is Chart.U:
        return f.compose(x, x * (y + c))
    return f.compose((x + c) * y, y)


def blow_up_branch(S: BranchGerm, chart: Chart, c: Scalar = 0) -> Tuple[BranchGerm, int]:
    """Strict transform in ``chart``, optionally recentred at v = c (chart U)
    or u = c (chart V) along the new divisor."""
    c = GaussRational.coerce(c)
    m = S.multiplicity
    pulled = _pull_back(S.f, chart, c)
    if chart is Chart.U:
        fhat = pulled.div_monomial(m, 0)
    else:
        fhat = pulled.div_monomial(0, m)
    if fhat.constant_term():
        raise StrictTransformMissesOrigin(
            f"strict transform does not pass through the chosen centre of chart {chart.value}"
        )
    return BranchGerm(fhat, check_squarefree=False), m


def blow_up_field(F: VectorFieldGerm, chart: Chart) -> Tuple[VectorFieldGerm, int, bool]:
    """Pull back and saturate; returns (field, divided power, dicritical)."""
    if chart is Chart.V:
        G, k, dic = blow_up_field(F.swap(), Chart.U)
        return G.swap(), k, dic
    x, y = BiPoly.x(), BiPoly.y()
    P1 = F.P.compose(x, x * y)
    Q1 = F.Q.compose(x, x * y)
    W = Q1 - y * P1
    if W.is_zero() or W.monomial_content()[0] >= 1:
        U_comp, V_comp = P1, W.div_monomial(1, 0)
    else:
        # regular at the centre: clear the denominator instead
        U_comp, V_comp = x * P1, W
    k = min(_x_order(U_comp), _x_order(V_comp))
    U_comp, V_comp = U_comp.div_monomial(k, 0), V_comp.div_monomial(k, 0)
    dicritical = _x_order(U_comp) == 0
    return VectorFieldGerm(U_comp, V_comp, saturate=False), k, dicritical


def _x_order(p: BiPoly) -> float:
    return p.monomial_content()[0] if p else float("inf")


def translate_field(F: VectorFieldGerm, p: Tuple[Scalar, Scalar]) -> VectorFieldGerm:
    a, b = p
    return VectorFieldGerm(F.P.translate(a, b), F.Q.translate(a, b), saturate=False)


def blow_up_scene(scene: Scene, chart: Chart, c: Scalar = 0) -> Scene:
    """Blow up the working point and move to the point of the new divisor
    where the strict transform lands (v = c in chart U, u = c in chart V)."""
    c = GaussRational.coerce(c)
    branch, _ = blow_up_branch(scene.branch, chart, c)
    field, _, dic = blow_up_field(scene.field, chart)
    if c:
        shift = (ZERO, c) if chart is Chart.U else (c, ZERO)
        field = translate_field(field, shift)
    step = scene.step + 1
    new_axis = chart.exceptional_axis
    survivors = []
    if not c:
        for d in scene.divisors:
            if d.axis != new_axis:
                survivors.append(replace(d, age=Age.OLD, self_intersection=d.self_intersection - 1))
    new = DivisorAxis(id=step, axis=new_axis, birth_step=step, age=Age.NEW)
    divisors = tuple(sorted(survivors + [new], key=lambda d: d.axis))
    return Scene(field=field, branch=branch, divisors=divisors, step=step, dicritical=dic)


def classify_scene(s: Scene) -> SceneType:
    n = len(s.divisors)
    if n > 2:
        raise MalformedScene(f"{n} divisors through one point")
    if n == 0:
        if s.step > 0:
            raise MalformedScene("no exceptional divisor after a blow-up")
        return SceneType(Intersection.DOUBLE)
    if n == 1:
        d = s.divisors[0]
        return SceneType(Intersection.DOUBLE, new=d if d.age is Age.NEW else None,
                         old=d if d.age is Age.OLD else None)
    old = next((d for d in s.divisors if d.age is Age.OLD), None)
    new = next((d for d in s.divisors if d.age is Age.NEW), None)
    if old is None or new is None:
        raise MalformedScene("a triple point needs one old and one new divisor")
    return SceneType(Intersection.TRIPLE, old=old, new=new)
