"""Reference sets and the four facet scores.

A group's transition between adjacent snapshots is located in a
continuous space instead of being forced into a single category. The
coordinates are:

* unicity: does the group exchange members with a single counterpart
  group or with several?
* identity: how fully do the counterpart groups carry over into (or out
  of) the target?
* outflow: what fraction of the target's members is absent from the
  adjacent snapshot altogether?
* metadata (optional): how does attribute mixing change relative to the
  counterpart groups?

The same machinery serves both temporal directions; the caller picks
whether the counterparts live at t-1 (backward) or t+1 (forward).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import AttributeTable, Direction, ElementId, Group, Snapshot, TemporalClustering
from .errors import BoundarySnapshot, FacetOutOfRange, MissingAttribute, NoReferences

# Reserved category for elements without an attribute value (lenient mode).
MISSING_VALUE = "__missing__"


@dataclass(frozen=True)
class ReferenceSets:
    """Adjacent-snapshot groups overlapping a target, largest overlap first.

    Entries are ``(group, shared)`` pairs with ``shared = |group & target|``.
    Ties on the shared count break by ascending group id so the order is
    total and reproducible.
    """

    entries: tuple[tuple[Group, int], ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[Group, int]]:
        return iter(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    @property
    def groups(self) -> tuple[Group, ...]:
        return tuple(g for g, _ in self.entries)

    @property
    def shared_counts(self) -> tuple[int, ...]:
        return tuple(s for _, s in self.entries)

    def union_members(self) -> frozenset[ElementId]:
        members: set[ElementId] = set()
        for g, _ in self.entries:
            members |= g.members
        return frozenset(members)


EMPTY_REFERENCES = ReferenceSets(())


@dataclass(frozen=True)
class FacetScores:
    """The facet coordinates of one group in one temporal direction.

    ``metadata`` is None when no attribute table was supplied or when
    there are no reference groups to compare against.
    """

    unicity: float
    identity: float
    outflow: float
    metadata: float | None = None

    def __post_init__(self) -> None:
        for name in ("unicity", "identity", "outflow"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise FacetOutOfRange(f"{name}={value!r} outside [0, 1]")
        if self.metadata is not None and not -1.0 <= self.metadata <= 1.0:
            raise FacetOutOfRange(f"metadata={self.metadata!r} outside [-1, 1]")
        if self.outflow == 1.0 and (self.unicity != 1.0 or self.identity != 0.0):
            raise FacetOutOfRange(
                "outflow 1 implies no reference groups, forcing unicity 1 and identity 0"
            )


def reference_sets(target: Group, adjacent: Snapshot) -> ReferenceSets:
    """All groups of ``adjacent`` sharing at least one member with ``target``."""
    entries = [
        (g, len(g.members & target.members))
        for g in adjacent.groups
        if g.members & target.members
    ]
    entries.sort(key=lambda entry: (-entry[1], entry[0].id))
    return ReferenceSets(tuple(entries))


def unicity(target: Group, refs: ReferenceSets) -> float:
    """Dominance of the largest counterpart group.

    1 with zero or one reference (a group whose members all arrive from,
    or leave to, a single place is maximally "unique"; so is a group
    with no counterpart at all). With two or more references the score
    is the gap between the two largest contributions divided by the
    total contribution, so equal sharing gives 0 and a crushing
    majority pushes the score toward 1 regardless of how many minor
    references exist.
    """
    if len(refs) <= 1:
        return 1.0
    counts = refs.shared_counts
    return (counts[0] - counts[1]) / sum(counts)


def identity(target: Group, refs: ReferenceSets) -> float:
    """How much of the reference groups' identity transfers with their members.

    Each reference contributes its shared-member count weighted by the
    fraction of itself that moved; the total is normalized by the size
    of the union of the full reference groups. A reference arriving
    whole pushes the score up; a reference sending a sliver of itself
    barely registers. 0 when there are no references.
    """
    if not refs:
        return 0.0
    union_size = len(refs.union_members())
    moved = math.fsum(
        shared * (shared / len(group.members)) for group, shared in refs
    )
    # Mathematically <= 1; guard against accumulated rounding only.
    return min(1.0, moved / union_size)


def outflow(target: Group, refs: ReferenceSets) -> float:
    """Fraction of the target's members absent from the adjacent snapshot."""
    uncovered = target.members - refs.union_members()
    return len(uncovered) / len(target.members)


def attribute_entropy(
    members: Iterable[ElementId],
    attrs: AttributeTable,
    *,
    strict: bool = False,
) -> float:
    """Normalized Shannon entropy of the members' attribute values.

    The entropy over the distinct values present is divided by log2 of
    their number, so the result lives in [0, 1]; a single-valued set is
    0 by convention. Elements missing from ``attrs`` raise
    MissingAttribute in strict mode and otherwise fall into the reserved
    ``__missing__`` category.
    """
    values = []
    for element in members:
        try:
            values.append(attrs[element])
        except KeyError:
            if strict:
                raise MissingAttribute(f"no attribute value for element {element!r}") from None
            values.append(MISSING_VALUE)
    if not values:
        raise ValueError("attribute entropy of an empty member set is undefined")
    counts = Counter(values)
    k = len(counts)
    if k <= 1:
        return 0.0
    n = len(values)
    raw = -math.fsum((c / n) * math.log2(c / n) for c in counts.values())
    return raw / math.log2(k)


def attribute_entropy_change(
    target: Group,
    refs: ReferenceSets,
    attrs: AttributeTable,
    *,
    strict: bool = False,
) -> float:
    """Target entropy minus the mean entropy of the full reference groups.

    Positive values mean the target is more mixed than where its members
    came from (or go to); the result lies in [-1, 1].
    """
    if not refs:
        raise NoReferences("entropy change needs at least one reference group")
    target_entropy = attribute_entropy(target.members, attrs, strict=strict)
    mean_reference = math.fsum(
        attribute_entropy(group.members, attrs, strict=strict) for group, _ in refs
    ) / len(refs)
    return target_entropy - mean_reference


def scores_against(
    target: Group,
    adjacent: Snapshot | None,
    attrs: AttributeTable | None = None,
    *,
    strict_attributes: bool = False,
) -> FacetScores:
    """Facet scores of ``target`` against one adjacent snapshot.

    ``adjacent=None`` stands for a missing snapshot treated as an empty
    partition: no references, hence unicity 1, identity 0, outflow 1.
    """
    refs = EMPTY_REFERENCES if adjacent is None else reference_sets(target, adjacent)
    metadata = None
    if attrs is not None and refs:
        metadata = attribute_entropy_change(target, refs, attrs, strict=strict_attributes)
    return FacetScores(
        unicity=unicity(target, refs),
        identity=identity(target, refs),
        outflow=outflow(target, refs),
        metadata=metadata,
    )


def facet_scores(
    target: Group,
    clustering: TemporalClustering,
    t: int,
    direction: Direction,
    attrs: AttributeTable | None = None,
    *,
    boundary: bool = False,
    strict_attributes: bool = False,
) -> FacetScores:
    """Resolve the adjacent snapshot for ``direction`` and score ``target``.

    Looking backward from the first snapshot (or forward from the last)
    raises BoundarySnapshot unless ``boundary`` is set, in which case the
    missing snapshot counts as empty and the scores describe a pure
    appearance or disappearance.
    """
    position = clustering.position_of(t)
    adjacent_position = position + direction.step
    if 0 <= adjacent_position < len(clustering.snapshots):
        adjacent = clustering.snapshots[adjacent_position]
    elif boundary:
        adjacent = None
    else:
        raise BoundarySnapshot(
            f"no snapshot {direction.value} of index {t}; "
            "pass boundary=True to treat it as empty"
        )
    return scores_against(target, adjacent, attrs, strict_attributes=strict_attributes)
