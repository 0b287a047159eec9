"""Domain model for temporal clusterings.

An element id is a plain text token. A group is a named set of elements
inside one snapshot, a snapshot is a partition of the elements observed
at that timestep, and a temporal clustering is the ordered sequence of
snapshots. All values are immutable after construction, so they can be
shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import UnknownSnapshot, ValidationError, Violation, ViolationKind

ElementId = str

# One categorical value per element, fixed for the whole timeline.
AttributeTable = Mapping[ElementId, str]


class Direction(Enum):
    """Temporal perspective: compare a group against t-1 or against t+1."""

    BACKWARD = "backward"
    FORWARD = "forward"

    @property
    def opposite(self) -> Direction:
        return Direction.FORWARD if self is Direction.BACKWARD else Direction.BACKWARD

    @property
    def step(self) -> int:
        """Offset of the adjacent snapshot: -1 backward, +1 forward."""
        return -1 if self is Direction.BACKWARD else 1


@dataclass(frozen=True)
class Group:
    """A named set of elements inside one snapshot."""

    id: str
    members: frozenset[ElementId]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, element: ElementId) -> bool:
        return element in self.members


@dataclass(frozen=True)
class Snapshot:
    """One timestep: a partition of the elements observed at that step."""

    index: int
    groups: tuple[Group, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "groups", tuple(self.groups))

    @property
    def universe(self) -> frozenset[ElementId]:
        members: set[ElementId] = set()
        for g in self.groups:
            members |= g.members
        return frozenset(members)

    def group(self, group_id: str) -> Group:
        for g in self.groups:
            if g.id == group_id:
                return g
        raise KeyError(group_id)


@dataclass(frozen=True)
class TemporalClustering:
    """Ordered sequence of snapshot partitions."""

    snapshots: tuple[Snapshot, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "snapshots", tuple(self.snapshots))
        object.__setattr__(
            self, "_positions", {s.index: p for p, s in enumerate(self.snapshots)}
        )

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self) -> Iterator[Snapshot]:
        return iter(self.snapshots)

    def position_of(self, t: int) -> int:
        """Sequence position of the snapshot whose index is ``t``."""
        try:
            return self._positions[t]  # type: ignore[attr-defined]
        except KeyError:
            raise UnknownSnapshot(f"no snapshot with index {t}") from None

    def snapshot(self, t: int) -> Snapshot:
        return self.snapshots[self.position_of(t)]


def from_membership(partitions: Sequence[Sequence[Iterable[ElementId]]]) -> TemporalClustering:
    """Build a clustering from raw member sets, one list of sets per step.

    Group ids are synthesized as ``"<t>_<i>"`` from the snapshot position
    and the group's position within it.
    """
    snapshots = []
    for t, groups in enumerate(partitions):
        snapshots.append(
            Snapshot(
                index=t,
                groups=tuple(
                    Group(id=f"{t}_{i}", members=frozenset(members))
                    for i, members in enumerate(groups)
                ),
            )
        )
    return TemporalClustering(tuple(snapshots))


def reversed_clustering(clustering: TemporalClustering) -> TemporalClustering:
    """The same partitions in reverse temporal order, reindexed from 0."""
    return TemporalClustering(
        tuple(
            Snapshot(index=i, groups=snap.groups)
            for i, snap in enumerate(reversed(clustering.snapshots))
        )
    )


def validate(clustering: TemporalClustering) -> None:
    """Check every structural invariant, raising with the full violation list.

    Checks: at least one snapshot, strictly increasing non-negative
    snapshot indices, no empty groups, unique group ids per snapshot,
    and pairwise-disjoint groups per snapshot.
    """
    violations: list[Violation] = []

    if not clustering.snapshots:
        violations.append(
            Violation(ViolationKind.EMPTY_SEQUENCE, None, (), "no snapshots")
        )
        raise ValidationError(violations)

    previous_index: int | None = None
    for snap in clustering.snapshots:
        if snap.index < 0 or (previous_index is not None and snap.index <= previous_index):
            violations.append(
                Violation(
                    ViolationKind.BAD_SNAPSHOT_INDEX,
                    snap.index,
                    (),
                    f"index {snap.index} is negative or not increasing",
                )
            )
        previous_index = snap.index

        seen_ids: set[str] = set()
        owner: dict[ElementId, str] = {}
        overlapping_pairs: set[tuple[str, str]] = set()
        for g in snap.groups:
            if g.id in seen_ids:
                violations.append(
                    Violation(
                        ViolationKind.DUPLICATE_GROUP_ID,
                        snap.index,
                        (g.id,),
                        f"group id {g.id!r} appears more than once",
                    )
                )
            seen_ids.add(g.id)
            if not g.members:
                violations.append(
                    Violation(
                        ViolationKind.EMPTY_GROUP,
                        snap.index,
                        (g.id,),
                        f"group {g.id!r} has no members",
                    )
                )
            for e in g.members:
                if e in owner and owner[e] != g.id:
                    pair = tuple(sorted((owner[e], g.id)))
                    if pair not in overlapping_pairs:
                        overlapping_pairs.add(pair)
                        violations.append(
                            Violation(
                                ViolationKind.OVERLAPPING_GROUPS,
                                snap.index,
                                pair,
                                f"groups {pair[0]!r} and {pair[1]!r} share element {e!r}",
                            )
                        )
                else:
                    owner[e] = g.id

    if violations:
        raise ValidationError(violations)


def universe_at(clustering: TemporalClustering, t: int) -> frozenset[ElementId]:
    """All elements observed at timestep ``t`` (union of its groups)."""
    return clustering.snapshot(t).universe
