"""Exception hierarchy shared by the whole package.

Three broad families matter to callers: validation errors (bad values or
malformed structures), protocol errors (a legal value arriving at the wrong
moment of a session), and internal errors (a solver or invariant failing in a
way the caller cannot repair).  The CLI and the HTTP service map these onto
exit codes and status codes respectively.
"""

from __future__ import annotations


class Docit2Error(Exception):
    """Base class for everything raised on purpose by this package."""


class ValidationError(Docit2Error, ValueError):
    """A value or structure violates a documented precondition."""

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class LevelSetError(ValidationError):
    """A membership-level grid is malformed (missing 0/1, not ascending, ...)."""


class NestingError(ValidationError):
    """Stored cuts are not nested or an interval is inverted."""


class WeightError(ValidationError):
    """Weights are negative, out of range, or do not sum to one."""


class RatioConsistencyError(ValidationError):
    """Subjective ratios fail a consistency check.

    Carries the offending tuples so callers can show them to the analyst
    instead of silently repairing anything.
    """

    def __init__(self, message: str, violations: list[tuple]):
        super().__init__(message)
        self.violations = violations


class EnumerationCapError(ValidationError):
    """A hesitation family would exceed the configured enumeration cap."""

    def __init__(self, message: str, count: int, cap: int):
        super().__init__(message)
        self.count = count
        self.cap = cap


class PrecisionError(ValidationError):
    """Card approximation of a value tuple needs more decimal digits."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class ProtocolError(Docit2Error):
    """An event is not legal in the current session phase."""

    def __init__(self, message: str, *, phase: str, expected: list[str]):
        super().__init__(message)
        self.phase = phase
        self.expected = expected


class InconsistencyError(ProtocolError):
    """Dialogue answers contradict each other; the affected step must restart."""


class DocumentError(Docit2Error, ValueError):
    """A session document or event log cannot be parsed or migrated."""

    def __init__(self, message: str, *, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class MigrationError(DocumentError):
    """Document schema version is unknown to this build."""


class InternalError(Docit2Error):
    """An invariant failed inside a solver or state machine."""
