"""Search for (C1)/(C2) points along the resolution of a separatrix.

A (C1) point is a point of the total transform lying on exactly one
smooth branch whose index is not in Q+ or 0.  A (C2) point is a normal
crossing of two smooth branches S0, S1 with Ind(S1) <= -r and Ind(S0) not
a rational >= -1/r for some r > 0.  Either one, at any stage, certifies a
second separatrix through the original point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .blowup import Chart, Scene, blow_up_field
from .errors import (
    ParseError,
    HypothesisNotInvariant,
    LedgerViolation,
    NotInvariant,
    ReplayMismatch,
    StepLimit,
)
from .gaussian import ZERO, GaussRational
from .germ import BranchGerm, VectorFieldGerm, cofactor
from .index import (
    IndexValue,
    LeqRat,
    NotGeqRat,
    NotInPosRat,
    PosRatOrZero,
    axis_index,
    classify,
    cs_index_smooth,
    css_index_branch,
)
from .parser import format_poly, parse_poly
from .proctrack import LedgerRow, TraceLedger
from .rational import UniRat, residue_at, residue_at_infinity
from .resolution import DEFAULT_MAX_STEPS, ResolutionStep, ResolutionTrace, resolve
from .roots import gaussian_roots

SCHEMA = "cert-v1"


# -- point tests ---------------------------------------------------------------


def detect_c1(F: VectorFieldGerm, S: BranchGerm) -> Optional[IndexValue]:
    if not S.is_smooth():
        return None
    iota = cs_index_smooth(F, S)
    return iota if classify(iota, NotInPosRat()) else None


@dataclass(frozen=True)
class C2Hit:
    r: Fraction
    index_s0: GaussRational
    index_s1: GaussRational
    swapped: bool


def c2_from_indices(i0: GaussRational, i1: GaussRational) -> Optional[C2Hit]:
    """Decide the (C2) condition for a transverse pair, trying both roles."""
    for swapped, (s0, s1) in ((False, (i0, i1)), (True, (i1, i0))):
        if s1.is_rational() and s1.re < 0:
            r = -s1.re
            if classify(s0, NotGeqRat(-1 / r)):
                return C2Hit(r, s0, s1, swapped)
    return None


def detect_c2(F: VectorFieldGerm, S0: BranchGerm, S1: BranchGerm) -> Optional[Fraction]:
    hit = c2_from_indices(cs_index_smooth(F, S0).value, cs_index_smooth(F, S1).value)
    return None if hit is None else hit.r


# -- certificate ---------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    kind: str
    field_: VectorFieldGerm
    branch: BranchGerm
    max_steps: int
    force: bool
    css_index: Optional[GaussRational] = None
    stage: Optional[int] = None
    point: Optional[dict] = None
    index: Optional[GaussRational] = None
    r: Optional[Fraction] = None
    index_s0: Optional[GaussRational] = None
    index_s1: Optional[GaussRational] = None
    curves: Tuple[str, ...] = ()
    reason: Optional[str] = None
    trace: Optional[ResolutionTrace] = None
    ledger: Tuple[LedgerRow, ...] = ()

    def to_json(self) -> dict:
        def g(v):
            return None if v is None else v.to_json()

        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "stage": self.stage,
            "point": self.point,
            "curves": list(self.curves),
            "indices": {
                "css": g(self.css_index),
                "index": g(self.index),
                "index_s0": g(self.index_s0),
                "index_s1": g(self.index_s1),
            },
            "r": None if self.r is None else f"{self.r.numerator}/{self.r.denominator}",
            "reason": self.reason,
            "input": {
                "field": self.field_.to_json(),
                "branch": format_poly(self.branch.f),
                "options": {"max_steps": self.max_steps, "force": self.force},
            },
            "trace": [] if self.trace is None else self.trace.to_json(),
            "ledger": [row.to_json() for row in self.ledger],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)


def _point(stage: int, chart: Chart, coords: Tuple[GaussRational, GaussRational]) -> dict:
    return {"stage": stage, "chart": chart.value, "coords": [c.to_json() for c in coords]}


@dataclass
class _Hit:
    kind: str
    point: Optional[dict]
    curves: Tuple[str, ...]
    index: Optional[GaussRational] = None
    c2: Optional[C2Hit] = None


@dataclass
class _Survey:
    """Everything learned about the newest divisor at one stage."""

    hits: List[_Hit] = field(default_factory=list)
    unresolved_points: bool = False


def _survey_new_divisor(prev: Scene, step: ResolutionStep, scene: Scene, j: int) -> _Survey:
    out = _Survey()
    GU, _, _ = blow_up_field(prev.field, Chart.U)
    GV, _, _ = blow_up_field(prev.field, Chart.V)
    name_new = f"E{j}"
    c = step.translation or ZERO
    survivors = {d.id for d in scene.divisors}
    old_y = prev.divisor_on_axis(1)  # meets the new divisor at the chart U origin
    old_x = prev.divisor_on_axis(0)  # meets it at the chart V origin

    along = GU.P.div_monomial(1, 0).restrict_x(0)
    normal = GU.Q.restrict_x(0)
    ratio = UniRat(along, normal)
    roots, rest = gaussian_roots(normal)

    c1_hits: List[_Hit] = []
    corner_hits: List[_Hit] = []
    qi_total = ZERO
    for v0, _ in roots:
        e_index = residue_at(ratio, v0)
        qi_total = qi_total + e_index
        curves = [name_new]
        if step.chart is Chart.U and v0 == c:
            curves.append("S")
        if old_y is not None and v0.is_zero():
            curves.append(f"E{old_y.id}")
        coords = (ZERO, v0)
        if len(curves) == 1 and classify(e_index, NotInPosRat()):
            c1_hits.append(_Hit("C1", _point(j, Chart.U, coords), tuple(curves), index=e_index))
        if old_y is not None and v0.is_zero() and old_y.id not in survivors:
            other = axis_index(GU, 1).value
            hit = c2_from_indices(e_index, other)
            if hit:
                pair = (name_new, f"E{old_y.id}")
                corner_hits.append(_Hit("C2", _point(j, Chart.U, coords), pair if not hit.swapped else pair[::-1], c2=hit))

    chart_total = -residue_at_infinity(ratio)
    far_total = ZERO
    if not GV.P.constant_term() and not GV.Q.constant_term():
        far_index = axis_index(GV, 1).value
        far_total = far_index
        curves = [name_new]
        if step.chart is Chart.V:
            curves.append("S")
        if old_x is not None:
            curves.append(f"E{old_x.id}")
        coords = (ZERO, ZERO)
        if len(curves) == 1 and classify(far_index, NotInPosRat()):
            c1_hits.append(_Hit("C1", _point(j, Chart.V, coords), tuple(curves), index=far_index))
        if old_x is not None and old_x.id not in survivors:
            other = axis_index(GV, 0).value
            hit = c2_from_indices(far_index, other)
            if hit:
                pair = (name_new, f"E{old_x.id}")
                corner_hits.append(_Hit("C2", _point(j, Chart.V, coords), pair if not hit.swapped else pair[::-1], c2=hit))

    if chart_total + far_total != -1:
        raise LedgerViolation(f"index sum along E{j} is {chart_total + far_total}, expected -1")

    out.hits.extend(c1_hits)
    if rest.degree >= 1:
        out.unresolved_points = True
        hidden = chart_total - qi_total
        if classify(hidden, NotInPosRat()):
            # some point among the roots of `rest` must carry such an index
            point = {"stage": j, "chart": "U", "roots_of": format_poly(_as_y_poly(rest))}
            out.hits.append(_Hit("C1", point, (name_new,), index=hidden))
    out.hits.extend(corner_hits)
    return out


def _as_y_poly(p):
    from .polynomial import BiPoly

    return BiPoly({(0, k): c for k, c in enumerate(p.coeffs)})


def _working_point_c2(scene: Scene, j: int) -> Optional[_Hit]:
    if len(scene.divisors) != 1 or not scene.branch.is_smooth():
        return None
    if scene.tangent_divisor() is not None:
        return None
    d = scene.divisors[0]
    i_s = cs_index_smooth(scene.field, scene.branch).value
    i_d = axis_index(scene.field, d.axis).value
    hit = c2_from_indices(i_s, i_d)
    if hit is None:
        return None
    pair = ("S", f"E{d.id}")
    coords = {"stage": j, "chart": "working", "coords": [ZERO.to_json(), ZERO.to_json()]}
    return _Hit("C2", coords, pair if not hit.swapped else pair[::-1], c2=hit)


class _LabelBook:
    """Tracks which of the two divisors at a triple point plays D1 or D2."""

    def __init__(self):
        self.labels: Dict[int, str] = {}

    def update(self, prev: Scene, scene: Scene, prev_kind: str) -> None:
        if len(scene.divisors) != 2:
            self.labels = {}
            return
        new = next(d for d in scene.divisors if d.birth_step == scene.step)
        old = next(d for d in scene.divisors if d is not new)
        if prev_kind == "Double" or not self.labels:
            self.labels = {new.id: "D1", old.id: "D2"}
            return
        departed = [i for i in self.labels if i != old.id]
        self.labels = {old.id: self.labels[old.id], new.id: self.labels[departed[0]]}


def _tripwire(row: LedgerRow, scene: Scene, labels: _LabelBook, hypothesis: bool) -> None:
    if row.d_bound is not None:
        d = scene.divisors[0]
        value = axis_index(scene.field, d.axis).value
        if not classify(value, LeqRat(-row.d_bound)):
            raise LedgerViolation(f"stage {scene.step}: Ind(E{d.id}) = {value} exceeds -{row.d_bound}")
    else:
        new = next(d for d in scene.divisors if d.birth_step == scene.step)
        expected = "D2" if row.quad.new_is_d2 else "D1"
        if labels.labels.get(new.id) != expected:
            raise LedgerViolation(f"stage {scene.step}: orientation of {row.quad} disagrees with the scene")
        for d in scene.divisors:
            bound = row.d1_bound if labels.labels[d.id] == "D1" else row.d2_bound
            value = axis_index(scene.field, d.axis).value
            if not classify(value, LeqRat(-bound)):
                raise LedgerViolation(f"stage {scene.step}: Ind(E{d.id}) = {value} exceeds -{bound}")
    if hypothesis:
        value = css_index_branch(scene.field, scene.branch).value
        if not classify(value, NotGeqRat(-row.branch_exclusion)):
            raise LedgerViolation(f"stage {scene.step}: Ind(S) = {value} >= -{row.branch_exclusion}")


def certify(
    F: VectorFieldGerm,
    S: BranchGerm,
    max_steps: int = DEFAULT_MAX_STEPS,
    force: bool = False,
) -> Certificate:
    base = dict(field_=F, branch=S, max_steps=max_steps, force=force)
    try:
        cofactor(F, S)
    except NotInvariant as exc:
        raise HypothesisNotInvariant(str(exc)) from exc
    try:
        iota = css_index_branch(F, S, max_steps).value
    except StepLimit as exc:
        return Certificate("Inconclusive", reason="StepLimit", trace=exc.trace, **base)
    hypothesis = classify(iota, NotInPosRat())
    base["css_index"] = iota
    if not hypothesis and not force:
        return Certificate("NotApplicable", index=iota, **base)

    try:
        trace = resolve(F, S, max_steps)
        if force and not trace.steps and classify(iota, PosRatOrZero()):
            # exploration: look at the first exceptional divisor anyway
            trace = resolve(F, S, max_steps, min_steps=1)
    except StepLimit as exc:
        return Certificate("Inconclusive", reason="StepLimit", trace=exc.trace, **base)
    base["trace"] = trace

    if S.is_smooth():
        found = detect_c1(F, S)
        if found is not None:
            pt = {"stage": 0, "chart": "working", "coords": [ZERO.to_json(), ZERO.to_json()]}
            return Certificate("C1", stage=0, point=pt, index=found.value, curves=("S",), **base)

    ledger = TraceLedger()
    labels = _LabelBook()
    active = True
    for j, step in enumerate(trace.steps, start=1):
        prev, scene = trace.scenes[j - 1], trace.scenes[j]
        if scene.dicritical:
            return Certificate("Dicritical", stage=j, ledger=tuple(ledger.rows), **base)
        survey = _survey_new_divisor(prev, step, scene, j)
        hits = list(survey.hits)
        working = _working_point_c2(scene, j)
        if working:
            hits.append(working)
        prev_kind = ledger.prev_kind
        row = ledger.advance(step.intersection.value, step.m_before)
        labels.update(prev, scene, prev_kind)
        if hits:
            return _from_hit(hits[0], j, base, tuple(ledger.rows))
        if survey.unresolved_points:
            active = False
        if active:
            _tripwire(row, scene, labels, hypothesis)
    return Certificate(
        "Inconclusive",
        reason="normal crossings reached without a (C1) or (C2) point",
        ledger=tuple(ledger.rows),
        **base,
    )


def _from_hit(hit: _Hit, stage: int, base: dict, rows: Tuple[LedgerRow, ...]) -> Certificate:
    if hit.kind == "C1":
        return Certificate("C1", stage=stage, point=hit.point, index=hit.index,
                           curves=hit.curves, ledger=rows, **base)
    c2 = hit.c2
    return Certificate("C2", stage=stage, point=hit.point, r=c2.r, index_s0=c2.index_s0,
                       index_s1=c2.index_s1, curves=hit.curves, ledger=rows, **base)


# -- replay --------------------------------------------------------------------


def certificate_input(doc: dict) -> Tuple[VectorFieldGerm, BranchGerm, int, bool]:
    spec = doc["input"]
    F = VectorFieldGerm(parse_poly(spec["field"]["P"]), parse_poly(spec["field"]["Q"]))
    S = BranchGerm(parse_poly(spec["branch"]))
    opts = spec.get("options", {})
    return F, S, int(opts.get("max_steps", DEFAULT_MAX_STEPS)), bool(opts.get("force", False))


def replay_certificate(cert: Union[Certificate, dict]) -> bool:
    doc = cert.to_json() if isinstance(cert, Certificate) else cert
    if doc.get("schema") != SCHEMA:
        raise ReplayMismatch(f"unknown schema {doc.get('schema')!r}")
    try:
        F, S, max_steps, force = certificate_input(doc)
    except (KeyError, TypeError, ValueError, ParseError) as exc:
        raise ReplayMismatch(f"malformed certificate input: {exc}") from exc
    fresh = certify(F, S, max_steps, force).to_json()
    if fresh != doc:
        diff = sorted(k for k in set(fresh) | set(doc) if fresh.get(k) != doc.get(k))
        raise ReplayMismatch(f"replay differs in: {', '.join(diff)}")
    return True
