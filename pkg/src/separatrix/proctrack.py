"""Coefficient quadruples (x, y, a, b) and predicted index bounds.

A ledger row records, after some blow-up, the rational thresholds that
the indices at the working point must respect when no (C1)/(C2) point
has turned up so far:

* Double phases: Ind(D) <= -d_bound.
* Triple phases: Ind(D1) <= -d1_bound and Ind(D2) <= -d2_bound, with
  d1_bound = x/y and d2_bound = (y*K + a)/(x*K + b).
* Always: Ind(S) is not a rational number >= -branch_exclusion.

K is the double-phase counter; after a return to a double point it is
reset to (x+y)**2 K + (x+y)(a+b), the reciprocal of the new bound.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import EstimateViolated, NonCanonicalProcess, RelationViolated
from .resolution import Process


class Phase(enum.Enum):
    DOUBLE_RUN = "DoubleRun"
    TRIPLE_DROP = "TripleDrop"
    TRIPLE_SAME = "TripleSame"
    RETURN_TO_DOUBLE = "ReturnToDouble"


@dataclass(frozen=True)
class CoeffQuad:
    x: int
    y: int
    a: int
    b: int

    def __post_init__(self):
        if self.x < 1 or self.y < 1 or self.a < 0 or self.b < 0:
            raise RelationViolated(f"quad {self.astuple()} out of range")

    def astuple(self) -> Tuple[int, int, int, int]:
        return (self.x, self.y, self.a, self.b)

    def det(self) -> int:
        return self.x * self.a - self.y * self.b

    @property
    def new_is_d2(self) -> bool:
        """Orientation: the newest divisor carries the D2 bound iff x > y."""
        return self.x > self.y

    def d1_bound(self) -> Fraction:
        return Fraction(self.x, self.y)

    def d2_bound(self, K) -> Fraction:
        return Fraction(self.y * K + self.a, self.x * K + self.b)

    def return_denominator(self, K) -> Fraction:
        s = self.x + self.y
        return Fraction(s * s * K + s * (self.a + self.b))

    def __str__(self):
        return f"({self.x},{self.y},{self.a},{self.b})"


BASE_QUAD = CoeffQuad(1, 1, 1, 0)


def _checked(q: CoeffQuad) -> CoeffQuad:
    if q.det() != 1:
        raise RelationViolated(f"unimodularity fails for {q}: xa - yb = {q.det()}")
    return q


def step_drop(q: CoeffQuad) -> CoeffQuad:
    """Blow-up of a triple point where the multiplicity drops."""
    if q.x > q.y:
        return _checked(CoeffQuad(q.x, q.x + q.y, q.a + q.b, q.b))
    return _checked(CoeffQuad(q.x + q.y, q.y, q.a, q.a + q.b))


def same_once(q: CoeffQuad) -> CoeffQuad:
    """Blow-up of a triple point at constant multiplicity."""
    if q.x <= q.y:
        return _checked(CoeffQuad(q.x, q.x + q.y, q.a + q.b, q.b))
    return _checked(CoeffQuad(q.x + q.y, q.y, q.a, q.a + q.b))


def step_same(q: CoeffQuad, alpha: int) -> CoeffQuad:
    """alpha - 1 constant-multiplicity blow-ups."""
    if alpha < 1:
        raise ValueError("alpha must be positive")
    for _ in range(alpha - 1):
        q = same_once(q)
    return q


def stage(q: CoeffQuad, alpha: int) -> CoeffQuad:
    """A full stage (one drop, then alpha - 1 same steps) in closed form."""
    if q.x > q.y:
        return _checked(CoeffQuad(q.x, q.y + alpha * q.x, q.a + alpha * q.b, q.b))
    return _checked(CoeffQuad(q.x + alpha * q.y, q.y, q.a, alpha * q.a + q.b))


def return_to_double(q: CoeffQuad, k, B, m_last: int) -> Tuple[Fraction, Fraction]:
    """(d_bound, branch_exclusion) at the double point reached from ``q``."""
    return 1 / q.return_denominator(k), Fraction(B) + m_last * m_last


# -- ledgers -------------------------------------------------------------------


@dataclass(frozen=True)
class LedgerRow:
    phase: Phase
    blowups: int
    multiplicity: int
    K: Fraction
    branch_exclusion: Fraction
    quad: Optional[CoeffQuad] = None
    d_bound: Optional[Fraction] = None
    d1_bound: Optional[Fraction] = None
    d2_bound: Optional[Fraction] = None

    @property
    def unimodular(self) -> Optional[bool]:
        return None if self.quad is None else self.quad.det() == 1

    def to_json(self) -> dict:
        def q(v):
            return None if v is None else str(v)

        return {
            "phase": self.phase.value,
            "blowups": self.blowups,
            "multiplicity": self.multiplicity,
            "K": str(self.K),
            "branch_exclusion": str(self.branch_exclusion),
            "quad": None if self.quad is None else list(self.quad.astuple()),
            "d_bound": q(self.d_bound),
            "d1_bound": q(self.d1_bound),
            "d2_bound": q(self.d2_bound),
        }


def _triple_row(phase, n, m, K, B, q) -> LedgerRow:
    return LedgerRow(phase, n, m, Fraction(K), Fraction(B), q,
                     d1_bound=q.d1_bound(), d2_bound=q.d2_bound(K))


def simulate(P: Process) -> List[LedgerRow]:
    """Ledger of a process whose last stage stops before the final blow-up
    back to a double point; that blow-up is appended as its own row."""
    k, m = P.head
    if k < 1:
        raise NonCanonicalProcess("the head of a process needs k >= 1")
    K = Fraction(k)
    B = Fraction(k * m * m)
    rows = [LedgerRow(Phase.DOUBLE_RUN, k, m, K, B, d_bound=1 / K)]
    n = k
    q: Optional[CoeffQuad] = None
    for alpha, mi in P.stages:
        for j in range(alpha):
            n += 1
            B += mi * mi
            if q is None:
                q, phase = BASE_QUAD, Phase.TRIPLE_DROP
            elif j == 0:
                q, phase = step_drop(q), Phase.TRIPLE_DROP
            else:
                q, phase = same_once(q), Phase.TRIPLE_SAME
            rows.append(_triple_row(phase, n, mi, K, B, q))
    if q is not None:
        m_last = P.stages[-1][1]
        d, B = return_to_double(q, K, B, m_last)
        rows.append(LedgerRow(Phase.RETURN_TO_DOUBLE, n + 1, m_last, 1 / d, B, q, d_bound=d))
    return rows


def final_quad(alphas: Sequence[int]) -> Optional[CoeffQuad]:
    """Quad after the triple stages with the given lengths."""
    q: Optional[CoeffQuad] = None
    for alpha in alphas:
        q = step_same(BASE_QUAD, alpha) if q is None else stage(q, alpha)
    return q


@dataclass
class TraceLedger:
    """Incremental ledger driven by the realized sequence of scenes."""

    K: Fraction = Fraction(0)
    B: Fraction = Fraction(0)
    quad: Optional[CoeffQuad] = None
    prev_kind: str = "Double"
    prev_m: Optional[int] = None
    rows: List[LedgerRow] = field(default_factory=list)

    def advance(self, kind: str, m_before: int) -> LedgerRow:
        """Register one blow-up at multiplicity ``m_before`` giving a scene of type ``kind``."""
        n = len(self.rows) + 1
        self.B += m_before * m_before
        if kind == "Double":
            if self.prev_kind == "Double":
                self.K += 1
                row = LedgerRow(Phase.DOUBLE_RUN, n, m_before, self.K, self.B, d_bound=1 / self.K)
            else:
                self.K = self.quad.return_denominator(self.K)
                row = LedgerRow(Phase.RETURN_TO_DOUBLE, n, m_before, self.K, self.B,
                                self.quad, d_bound=1 / self.K)
                self.quad = None
        else:
            if self.prev_kind == "Double":
                self.quad, phase = BASE_QUAD, Phase.TRIPLE_DROP
            elif m_before < self.prev_m:
                self.quad, phase = step_drop(self.quad), Phase.TRIPLE_DROP
            else:
                self.quad, phase = same_once(self.quad), Phase.TRIPLE_SAME
            row = _triple_row(phase, n, m_before, self.K, self.B, self.quad)
        self.prev_kind, self.prev_m = kind, m_before
        self.rows.append(row)
        return row


# -- identities and estimates --------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str
    holds: bool

    def __str__(self):
        mark = "ok" if self.holds else "FAILED"
        return f"{self.name}: {self.lhs} {self.relation} {self.rhs} [{mark}]"


def _check(name: str, lhs, rhs, relation: str) -> Check:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    holds = {"=": lhs == rhs, ">=": lhs >= rhs}[relation]
    return Check(name, lhs, rhs, relation, holds)


@dataclass(frozen=True)
class DualReport:
    quad: CoeffQuad
    reduced_quad: CoeffQuad
    checks: Tuple[Check, ...]


def dual_relations(P: Process) -> DualReport:
    if len(P.stages) < 2:
        raise ValueError("the duality relations need at least two stages")
    alphas = P.alphas
    q = final_quad(alphas)
    qb = final_quad(alphas[1:])
    a1 = alphas[0]
    checks = (
        _check("b = y_bar", q.b, qb.y, "="),
        _check("a = x_bar", q.a, qb.x, "="),
        _check("x = alpha1*y_bar + a_bar", q.x, a1 * qb.y + qb.a, "="),
        _check("y = alpha1*x_bar + b_bar", q.y, a1 * qb.x + qb.b, "="),
    )
    failed = [c for c in checks if not c.holds]
    if failed:
        raise RelationViolated("; ".join(str(c) for c in failed))
    return DualReport(q, qb, checks)


@dataclass(frozen=True)
class EstimateReport:
    process: Process
    checks: Tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def clauses(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.checks)


def verify_estimates(P: Process, raise_on_failure: bool = True) -> EstimateReport:
    """Check the multiplicity identities and estimates on a realized process.

    ``P`` is the process read off a complete resolution trace, so its last
    stage includes the blow-up that returns to a double point.
    """
    core = P.without_final_blowup()
    m = core.head[1]
    alphas = core.alphas
    mults = tuple(mi for _, mi in core.stages)
    n = len(alphas)
    checks: List[Check] = []
    for row in simulate(core):
        if row.quad is not None:
            checks.append(_check(f"unimodular@{row.blowups}", row.quad.det(), 1, "="))
    for j in range(2, n + 1):
        q = final_quad(alphas[: j - 1])
        m_prev, m_j = mults[j - 2], mults[j - 1]
        if q.x >= q.y:
            checks.append(_check(f"mult-x@{j}", m, q.x * m_prev + q.y * m_j, "="))
        else:
            checks.append(_check(f"mult-y@{j}", m, q.y * m_prev + q.x * m_j, "="))
    if n >= 1:
        q = final_quad(alphas)
        mn = mults[-1]
        checks.append(_check("head-bound", m, (q.x + q.y) * mn, ">="))
        if n >= 2:
            total = sum(al * mi * mi for al, mi in zip(alphas, mults)) + mn * mn
            checks.append(_check("weighted-bound", total, (q.x + q.y) * (q.a + q.b) * mn * mn, ">="))
        else:
            checks.append(_check("single-stage", m, (alphas[0] + 1) * mults[0], ">="))
    report = EstimateReport(P, tuple(checks))
    if raise_on_failure and not report.ok:
        raise EstimateViolated("; ".join(str(c) for c in checks if not c.holds))
    return report


# -- enumeration ---------------------------------------------------------------


def compositions(total: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of positive integers with the given sum."""
    if total == 0:
        yield ()
        return
    for cut in itertools.product((False, True), repeat=total - 1):
        parts, run = [], 1
        for c in cut:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def processes_up_to(depth: int, k: int = 1) -> Iterator[Process]:
    """Processes with total triple depth sum(alpha) <= depth, using the
    smallest admissible multiplicities."""
    for total in range(depth + 1):
        for alphas in compositions(total):
            n = len(alphas)
            mults = tuple(range(n, 0, -1))
            yield Process((k, n + 1), tuple(zip(alphas, mults)))


def coefficient_table(depth: int) -> List[Tuple[Tuple[int, ...], Tuple[int, int, int, int]]]:
    """Quads reached after every sequence of triple blow-ups up to ``depth``
    (drop/same pattern encoded as the stage lengths)."""
    table = []
    for total in range(1, depth + 1):
        for alphas in compositions(total):
            table.append((alphas, final_quad(alphas).astuple()))
    return table


def coefficient_table_markdown(depth: int) -> str:
    lines = [
        f"# Coefficient quadruples, triple depth <= {depth}",
        "",
        "Generated by `separatrix.proctrack.coefficient_table_markdown`; do not edit by hand.",
        "",
        "| alphas | x | y | a | b | x a - y b |",
        "|---|---|---|---|---|---|",
    ]
    for alphas, (x, y, a, b) in coefficient_table(depth):
        lines.append(f"| {','.join(map(str, alphas))} | {x} | {y} | {a} | {b} | {x * a - y * b} |")
    return "\n".join(lines) + "\n"
