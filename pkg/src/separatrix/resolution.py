"""Iterated blow-up of an invariant branch until it is resolved."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .blowup import (
    Chart,
    DivisorAxis,
    Intersection,
    Scene,
    blow_up_scene,
    classify_scene,
)
from .errors import (
    IncompleteTrace,
    MalformedScene,
    MixedTangentCone,
    NonCanonicalProcess,
    NotLocallyIrreducible,
    StepLimit,
)
from .gaussian import ZERO, GaussRational
from .germ import BranchGerm, VectorFieldGerm, cofactor
from .parser import format_poly

DEFAULT_MAX_STEPS = 64


@dataclass(frozen=True)
class ResolutionStep:
    chart: Chart
    translation: Optional[GaussRational]
    m_before: int
    intersection: Intersection
    tangent_matched_divisor: Optional[int]
    divisors_after: Tuple[DivisorAxis, ...]

    def to_json(self) -> dict:
        return {
            "chart": self.chart.value,
            "translation": None if self.translation is None else self.translation.to_json(),
            "m_before": self.m_before,
            "intersection": self.intersection.value,
            "tangent_matched_divisor": self.tangent_matched_divisor,
            "divisors_after": [d.to_json() for d in self.divisors_after],
        }


@dataclass(frozen=True)
class ResolutionTrace:
    initial: Tuple[VectorFieldGerm, BranchGerm]
    steps: Tuple[ResolutionStep, ...]
    scenes: Tuple[Scene, ...]
    dicritical: bool = False

    @property
    def final(self) -> Scene:
        return self.scenes[-1]

    @property
    def multiplicity_sequence(self) -> Tuple[int, ...]:
        return tuple(s.m_before for s in self.steps)

    @property
    def complete(self) -> bool:
        return not self.dicritical and is_resolved(self.final)

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


def is_resolved(scene: Scene) -> bool:
    """Smooth branch, transverse to every divisor here, at most one divisor."""
    if not scene.branch.is_smooth() or len(scene.divisors) > 1:
        return False
    return scene.tangent_divisor() is None


def choose_centre(branch: BranchGerm) -> Tuple[Chart, GaussRational]:
    """Chart and translation landing on the point where the strict transform
    meets the new divisor."""
    try:
        t = branch.tangent
    except MixedTangentCone as exc:
        raise NotLocallyIrreducible(str(exc)) from exc
    if t.is_y_axis():
        return Chart.V, ZERO
    return Chart.U, -t.beta / t.gamma


def _check_divisors_invariant(scene: Scene) -> None:
    for d in scene.divisors:
        normal = scene.field.P if d.axis == 0 else scene.field.Q
        if normal and normal.monomial_content()[d.axis] == 0:
            raise MalformedScene(f"divisor E{d.id} is not invariant at step {scene.step}")


def resolve(
    F: VectorFieldGerm,
    S: BranchGerm,
    max_steps: int = DEFAULT_MAX_STEPS,
    min_steps: int = 0,
) -> ResolutionTrace:
    """Blow up until the branch is resolved (and at least ``min_steps`` times).

    A dicritical blow-up ends the trace early with the flag set.  On
    StepLimit the partial trace is attached to the exception.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    cofactor(F, S)
    scene = Scene(field=F, branch=S)
    scenes: List[Scene] = [scene]
    steps: List[ResolutionStep] = []
    while not is_resolved(scene) or len(steps) < min_steps:
        if len(steps) >= max_steps:
            exc = StepLimit(f"branch not resolved after {max_steps} blow-ups")
            exc.trace = ResolutionTrace((F, S), tuple(steps), tuple(scenes))
            raise exc
        chart, c = choose_centre(scene.branch)
        m_before = scene.branch.multiplicity
        scene = blow_up_scene(scene, chart, c)
        kind = classify_scene(scene).kind
        try:
            matched = scene.tangent_divisor()
        except MixedTangentCone as exc:
            raise NotLocallyIrreducible(str(exc)) from exc
        steps.append(
            ResolutionStep(
                chart=chart,
                translation=c if c else None,
                m_before=m_before,
                intersection=kind,
                tangent_matched_divisor=matched.id if matched else None,
                divisors_after=scene.divisors,
            )
        )
        scenes.append(scene)
        if scene.dicritical:
            return ResolutionTrace((F, S), tuple(steps), tuple(scenes), dicritical=True)
        _check_divisors_invariant(scene)
    return ResolutionTrace((F, S), tuple(steps), tuple(scenes))


# ---------------------------------------------------------------------------
# Processes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Process:
    """Head (k, m) followed by stages (alpha_i, m_i) with strictly decreasing m."""

    head: Tuple[int, int]
    stages: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        k, m = self.head
        if k < 0 or m < 1:
            raise NonCanonicalProcess(f"bad head {self.head}")
        prev = m
        for alpha, mi in self.stages:
            if alpha < 1 or mi < 1:
                raise NonCanonicalProcess(f"bad stage {(alpha, mi)}")
            if mi >= prev:
                raise NonCanonicalProcess("stage multiplicities must strictly decrease")
            prev = mi

    @property
    def alphas(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.stages)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return (self.head[1],) + tuple(m for _, m in self.stages)

    @property
    def literal(self) -> str:
        parts = [self.head] + list(self.stages)
        return ";".join(f"({a},{b})" for a, b in parts)

    def __str__(self):
        return self.literal

    def without_final_blowup(self) -> "Process":
        """Drop the last blow-up, the one that brings the resolved branch back
        to a double point; this is the form consumed by the ledger simulator."""
        if not self.stages:
            return self
        alpha, m = self.stages[-1]
        if alpha > 1:
            return Process(self.head, self.stages[:-1] + ((alpha - 1, m),))
        return Process(self.head, self.stages[:-1])

    def with_final_blowup(self) -> "Process":
        if not self.stages:
            return self
        alpha, m = self.stages[-1]
        return Process(self.head, self.stages[:-1] + ((alpha + 1, m),))


def run_lengths(seq: Sequence[int]) -> List[Tuple[int, int]]:
    """[(count, value)] for maximal runs of equal values."""
    out: List[Tuple[int, int]] = []
    for v in seq:
        if out and out[-1][1] == v:
            out[-1] = (out[-1][0] + 1, v)
        else:
            out.append((1, v))
    return out


def extract_process(t: ResolutionTrace) -> Process:
    # the process only sees the branch, so a dicritical last step is harmless
    if not is_resolved(t.final):
        raise IncompleteTrace("trace stopped before the branch reached normal crossings")
    runs = run_lengths(t.multiplicity_sequence)
    if not runs:
        return Process((0, t.initial[1].multiplicity))
    return Process(runs[0], tuple(runs[1:]))


_PAIR = re.compile(r"\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*")


def parse_process(text: str) -> Process:
    """Read the literal ``(k,m);(a1,m1);...;(an,mn)``."""
    pairs = []
    for chunk in text.split(";"):
        match = _PAIR.fullmatch(chunk)
        if not match:
            raise NonCanonicalProcess(f"cannot read process item {chunk.strip()!r}")
        pairs.append((int(match.group(1)), int(match.group(2))))
    if pairs[0][0] < 1:
        raise NonCanonicalProcess("the head needs k >= 1")
    return Process(pairs[0], tuple(pairs[1:]))


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def export_dot(t: ResolutionTrace) -> str:
    lines = ["digraph resolution {", "  rankdir=LR;", "  node [shape=box];"]
    for j, scene in enumerate(t.scenes):
        kind = "Double" if j == 0 else classify_scene(scene).kind.value
        m = scene.branch.multiplicity
        label = f"step {j}\\nm={m}\\n{kind}"
        style = ', style=bold' if kind == "Triple" else ""
        lines.append(f'  p{j} [label="{label}"{style}];')
    for j in range(1, len(t.scenes)):
        lines.append(f'  p{j - 1} -> p{j} [label="{t.steps[j - 1].chart.value}"];')
    for j, scene in enumerate(t.scenes):
        for d in scene.divisors:
            if d.birth_step < j:
                lines.append(f'  p{d.birth_step} -> p{j} [style=dashed, label="E{d.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe(t: ResolutionTrace) -> str:
    S = t.initial[1]
    if not t.steps:
        return f"branch {format_poly(S.f)} is already smooth"
    return ", ".join(str(m) for m in t.multiplicity_sequence)
