"""Exception hierarchy.

Three coarse families map onto CLI exit codes: bad input (2), blown
resource budgets (3), and internal invariant violations (4).
"""

from __future__ import annotations


class FullgroupLabError(Exception):
    """Base class for all library errors."""


class ValidationError(FullgroupLabError):
    """Caller-supplied data violates a documented precondition."""


class EmptyAlphabet(ValidationError):
    pass


class ConditionViolated(ValidationError):
    """A substitution fails one of its two standing growth conditions."""

    def __init__(self, condition: int, letter: str, detail: str = ""):
        self.condition = condition
        self.letter = letter
        msg = f"substitution condition {condition} fails at letter {letter!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class IncompleteTable(ValidationError):
    """A cocycle table does not cover exactly the admissible words."""


class NotInvertible(ValidationError):
    """A cocycle table does not define a bijection of the subshift."""


class SpecMismatch(ValidationError):
    """An operation was applied to a subshift it is not defined for."""


class DomainError(ValidationError):
    """A numeric parameter is outside the formula's domain."""


class InsufficientData(ValidationError):
    """Too few tail exceedances to fit or certify anything."""


class PeriodicCollision(ValidationError):
    """Distinct orbit offsets are indistinguishable on a periodic point."""


class UnresolvableHole(ValidationError):
    """The two-sided hole filling leaves a permanently drifting hole."""


class ResourceLimit(FullgroupLabError):
    """An enumeration exceeded its configured cap."""


class InternalInvariantError(FullgroupLabError):
    """A should-never-happen consistency check failed (bug guard)."""


class SaturationFailure(ResourceLimit):
    """Factor enumeration could not certify completeness within budget."""


class AdmissibilityViolation(InternalInvariantError):
    """A generated window is not in the language of its subshift."""
