"""Exception hierarchy shared by every layer of the engine."""

from __future__ import annotations

from typing import FrozenSet, Iterable


class SeparatrixError(Exception):
    """Base class; the CLI maps any subclass to exit code 1."""


class ParseError(SeparatrixError):
    def __init__(self, position: int, expected: Iterable[str], text: str = ""):
        self.position = position
        self.expected: FrozenSet[str] = frozenset(expected)
        want = ", ".join(sorted(self.expected)) or "end of input"
        msg = f"parse error at column {position}: expected one of {want}"
        if text:
            msg += f"\n  {text}\n  {' ' * position}^"
        super().__init__(msg)


class ZeroPolynomial(SeparatrixError):
    pass


class NonvanishingAtOrigin(SeparatrixError):
    pass


class NumberFieldEscape(SeparatrixError):
    """A required quantity lies outside Q(i)."""


class MixedTangentCone(SeparatrixError):
    pass


class NotInvariant(SeparatrixError):
    pass


class StrictTransformMissesOrigin(SeparatrixError):
    pass


class MalformedScene(SeparatrixError):
    pass


class NotLocallyIrreducible(SeparatrixError):
    pass


class StepLimit(SeparatrixError):
    trace = None


class IncompleteTrace(SeparatrixError):
    pass


class BranchNotSmooth(SeparatrixError):
    pass


class DegenerateAlongBranch(SeparatrixError):
    pass


class NotSingularThere(SeparatrixError):
    pass


class DicriticalDivisor(SeparatrixError):
    pass


class NonCanonicalProcess(SeparatrixError):
    pass


class RelationViolated(SeparatrixError):
    pass


class EstimateViolated(SeparatrixError):
    pass


class HypothesisNotInvariant(NotInvariant):
    pass


class ReplayMismatch(SeparatrixError):
    pass


class LedgerViolation(SeparatrixError):
    """An exact index contradicts a predicted bound; this is an internal error."""
