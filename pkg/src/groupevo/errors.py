"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class GroupEvoError(Exception):
    """Base class for every error raised by this package."""


class ViolationKind(Enum):
    OVERLAPPING_GROUPS = "overlapping-groups"
    EMPTY_GROUP = "empty-group"
    DUPLICATE_GROUP_ID = "duplicate-group-id"
    EMPTY_SEQUENCE = "empty-sequence"
    BAD_SNAPSHOT_INDEX = "bad-snapshot-index"


@dataclass(frozen=True)
class Violation:
    """One structural problem found by validation.

    ``snapshot`` is the index of the offending snapshot (None for
    sequence-level problems); ``groups`` lists the ids involved.
    """

    kind: ViolationKind
    snapshot: int | None
    groups: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        where = "" if self.snapshot is None else f" at snapshot {self.snapshot}"
        return f"{self.kind.value}{where}: {self.message}"


class ValidationError(GroupEvoError):
    """Raised with the complete list of violations, never just the first."""

    def __init__(self, violations: Iterable[Violation]):
        self.violations = tuple(violations)
        summary = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} violation(s): {summary}")


class UnknownSnapshot(GroupEvoError):
    pass


class BoundarySnapshot(GroupEvoError):
    pass


class MissingAttribute(GroupEvoError):
    pass


class NoReferences(GroupEvoError):
    pass


class FacetOutOfRange(GroupEvoError):
    pass


class EmptySet(GroupEvoError):
    pass


class TooFewSnapshots(GroupEvoError):
    pass


class MissingPartition(GroupEvoError):
    pass


class EmptyInput(GroupEvoError):
    pass


class InconsistentInput(GroupEvoError):
    pass


class EmptyFile(GroupEvoError):
    pass


class ConflictingAttribute(GroupEvoError):
    pass


class ParseError(GroupEvoError):
    """A malformed input line; carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
