"""Archetypal event weights, typicality, and batch analysis.

Each temporal direction has eight archetypes sitting at the corners of
the (unicity, identity, outflow) cube. An observed transition gets a
weight for every archetype, formed by multiplying each facet or its
complement according to the archetype's corner; the eight weights always
sum to 1, so they read as a soft assignment. Typicality is the largest
weight: 1 for a textbook event, 1/8 for a maximally ambiguous one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .core import AttributeTable, Direction, Group, TemporalClustering
from .errors import FacetOutOfRange
from .facets import FacetScores, scores_against


class Archetype(Enum):
    """Corner events of the facet cube, for both directions.

    Continue is shared: staying together is the same statement whichever
    way time is read.
    """

    BIRTH = "birth"
    ACCUMULATION = "accumulation"
    CONTINUE = "continue"
    MERGE = "merge"
    OFFSPRING = "offspring"
    REORGANIZATION = "reorganization"
    GROWTH = "growth"
    EXPANSION = "expansion"
    DEATH = "death"
    DISPERSION = "dispersion"
    SPLIT = "split"
    ANCESTOR = "ancestor"
    DISASSEMBLE = "disassemble"
    SHRINK = "shrink"
    REDUCTION = "reduction"

    @property
    def label(self) -> str:
        return self.value


# Canonical listing order per direction (also the tie-break order for
# dominant archetypes).
BACKWARD_ARCHETYPES: tuple[Archetype, ...] = (
    Archetype.BIRTH,
    Archetype.ACCUMULATION,
    Archetype.CONTINUE,
    Archetype.MERGE,
    Archetype.OFFSPRING,
    Archetype.REORGANIZATION,
    Archetype.GROWTH,
    Archetype.EXPANSION,
)
FORWARD_ARCHETYPES: tuple[Archetype, ...] = (
    Archetype.DEATH,
    Archetype.DISPERSION,
    Archetype.CONTINUE,
    Archetype.SPLIT,
    Archetype.ANCESTOR,
    Archetype.DISASSEMBLE,
    Archetype.SHRINK,
    Archetype.REDUCTION,
)

# Facet sign pattern per archetype: True picks the facet itself, False
# its complement, in (unicity, identity, outflow) order.
_SIGNS: dict[Archetype, tuple[bool, bool, bool]] = {
    Archetype.BIRTH: (True, False, True),
    Archetype.DEATH: (True, False, True),
    Archetype.ACCUMULATION: (False, False, True),
    Archetype.DISPERSION: (False, False, True),
    Archetype.CONTINUE: (True, True, False),
    Archetype.MERGE: (False, True, False),
    Archetype.SPLIT: (False, True, False),
    Archetype.OFFSPRING: (True, False, False),
    Archetype.ANCESTOR: (True, False, False),
    Archetype.REORGANIZATION: (False, False, False),
    Archetype.DISASSEMBLE: (False, False, False),
    Archetype.GROWTH: (True, True, True),
    Archetype.SHRINK: (True, True, True),
    Archetype.EXPANSION: (False, True, True),
    Archetype.REDUCTION: (False, True, True),
}

# Counterpart archetype when the snapshot sequence is reversed.
REVERSAL_DUAL: dict[Archetype, Archetype] = {
    Archetype.BIRTH: Archetype.DEATH,
    Archetype.DEATH: Archetype.BIRTH,
    Archetype.ACCUMULATION: Archetype.DISPERSION,
    Archetype.DISPERSION: Archetype.ACCUMULATION,
    Archetype.CONTINUE: Archetype.CONTINUE,
    Archetype.MERGE: Archetype.SPLIT,
    Archetype.SPLIT: Archetype.MERGE,
    Archetype.OFFSPRING: Archetype.ANCESTOR,
    Archetype.ANCESTOR: Archetype.OFFSPRING,
    Archetype.REORGANIZATION: Archetype.DISASSEMBLE,
    Archetype.DISASSEMBLE: Archetype.REORGANIZATION,
    Archetype.GROWTH: Archetype.SHRINK,
    Archetype.SHRINK: Archetype.GROWTH,
    Archetype.EXPANSION: Archetype.REDUCTION,
    Archetype.REDUCTION: Archetype.EXPANSION,
}


def archetypes_for(direction: Direction) -> tuple[Archetype, ...]:
    return BACKWARD_ARCHETYPES if direction is Direction.BACKWARD else FORWARD_ARCHETYPES


def event_weights(facets: FacetScores, direction: Direction) -> dict[Archetype, float]:
    """The eight archetype weights for one direction, in canonical order.

    Each weight is the product of the three facet terms picked by the
    archetype's corner; the complements make the eight products a
    partition of 1.
    """
    u, i, o = facets.unicity, facets.identity, facets.outflow
    for name, value in (("unicity", u), ("identity", i), ("outflow", o)):
        if not 0.0 <= value <= 1.0:
            raise FacetOutOfRange(f"{name}={value!r} outside [0, 1]")
    weights: dict[Archetype, float] = {}
    for archetype in archetypes_for(direction):
        su, si, so = _SIGNS[archetype]
        weights[archetype] = (
            (u if su else 1.0 - u) * (i if si else 1.0 - i) * (o if so else 1.0 - o)
        )
    return weights


def typicality(weights: Mapping[Archetype, float]) -> float:
    """Largest event weight; 1 means a pure archetype, 1/8 full ambiguity."""
    return max(weights.values())


@dataclass(frozen=True)
class EventRecord:
    """One group's scored transition in one direction."""

    t: int
    group: str
    direction: Direction
    facets: FacetScores
    weights: Mapping[Archetype, float]
    typicality: float
    dominant: tuple[Archetype, ...]

    def __post_init__(self) -> None:
        total = math.fsum(self.weights.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"event weights sum to {total!r}, expected 1")
        if self.typicality != max(self.weights.values()):
            raise ValueError("typicality must equal the maximum event weight")


def _record(t: int, group: Group, direction: Direction, facets: FacetScores) -> EventRecord:
    weights = event_weights(facets, direction)
    top = max(weights.values())
    dominant = tuple(a for a, w in weights.items() if w == top)
    return EventRecord(
        t=t,
        group=group.id,
        direction=direction,
        facets=facets,
        weights=weights,
        typicality=top,
        dominant=dominant,
    )


def analyze(
    clustering: TemporalClustering,
    attrs: AttributeTable | None = None,
    *,
    boundaries: bool = False,
    strict_attributes: bool = False,
) -> list[EventRecord]:
    """Score every (group, direction) pair across the clustering.

    Boundary directions (backward at the first snapshot, forward at the
    last) are skipped unless ``boundaries`` is set, in which case the
    missing snapshot counts as empty and the records describe pure
    appearances/disappearances. Output order is (t, group id,
    direction), with backward before forward.
    """
    records: list[EventRecord] = []
    snapshots = clustering.snapshots
    for position, snap in enumerate(snapshots):
        for group in sorted(snap.groups, key=lambda g: g.id):
            for direction in (Direction.BACKWARD, Direction.FORWARD):
                adjacent_position = position + direction.step
                if 0 <= adjacent_position < len(snapshots):
                    adjacent = snapshots[adjacent_position]
                elif boundaries:
                    adjacent = None
                else:
                    continue
                facets = scores_against(
                    group, adjacent, attrs, strict_attributes=strict_attributes
                )
                records.append(_record(snap.index, group, direction, facets))
    return records


class LiteratureEvent(Enum):
    """Classic undirected event labels reconstructed from directed records."""

    CONTINUE = "continue"
    MERGE = "merge"
    SPLIT = "split"
    GROWTH = "growth"
    SHRINK = "shrink"
    BIRTH = "birth"
    DEATH = "death"
    COMPLEX = "complex"


_FEEDER_OK = {Archetype.ANCESTOR, Archetype.CONTINUE}
_SUCCESSOR_OK = {Archetype.OFFSPRING, Archetype.CONTINUE}


def literature_label(
    forward_dominant: Archetype | None,
    backward_dominant: Archetype | None,
    *,
    co_feeder_dominants: Sequence[Archetype] = (),
    co_successor_dominants: Sequence[Archetype] = (),
    forward_outflow: float = 0.0,
    backward_outflow: float = 0.0,
    small_fraction: float = 0.2,
) -> LiteratureEvent:
    """Map directed dominants across one boundary onto a classic label.

    ``forward_dominant`` belongs to the earlier group looking ahead,
    ``backward_dominant`` to the later group looking back; either may be
    None when that side does not exist. ``co_feeder_dominants`` are the
    forward dominants of the other groups feeding the same later group
    (for merges); ``co_successor_dominants`` mirror that for splits.
    ``small_fraction`` bounds the member turnover still read as a plain
    continue.
    """
    if backward_dominant is Archetype.BIRTH or forward_dominant is None:
        return LiteratureEvent.BIRTH
    if forward_dominant is Archetype.DEATH or backward_dominant is None:
        return LiteratureEvent.DEATH
    if (
        backward_dominant is Archetype.MERGE
        and forward_dominant in _FEEDER_OK
        and all(a in _FEEDER_OK for a in co_feeder_dominants)
    ):
        return LiteratureEvent.MERGE
    if (
        forward_dominant is Archetype.SPLIT
        and backward_dominant in _SUCCESSOR_OK
        and all(a in _SUCCESSOR_OK for a in co_successor_dominants)
    ):
        return LiteratureEvent.SPLIT
    if forward_dominant is Archetype.CONTINUE and backward_dominant is Archetype.GROWTH:
        return LiteratureEvent.GROWTH
    if forward_dominant is Archetype.SHRINK and backward_dominant is Archetype.CONTINUE:
        return LiteratureEvent.SHRINK
    if forward_dominant is Archetype.CONTINUE and backward_dominant is Archetype.CONTINUE:
        new_fraction = backward_outflow
        gone_fraction = forward_outflow
        if new_fraction <= small_fraction and gone_fraction <= small_fraction:
            return LiteratureEvent.CONTINUE
        if new_fraction > small_fraction and gone_fraction <= small_fraction:
            return LiteratureEvent.GROWTH
        if gone_fraction > small_fraction and new_fraction <= small_fraction:
            return LiteratureEvent.SHRINK
        return LiteratureEvent.COMPLEX
    return LiteratureEvent.COMPLEX


@dataclass(frozen=True)
class LabeledEvent:
    """A reconstructed classic event at the boundary t -> t+1."""

    t: int
    label: LiteratureEvent
    sources: tuple[str, ...]
    targets: tuple[str, ...]


def literature_events(
    clustering: TemporalClustering,
    *,
    small_fraction: float = 0.2,
) -> list[LabeledEvent]:
    """Reconstruct classic events at every snapshot boundary.

    Births and deaths come from groups with no counterpart at all;
    merges need a merge-dominant later group fed only by ancestor- or
    continue-dominant groups; splits mirror that; exclusive one-to-one
    links yield continue/growth/shrink via ``literature_label``. Whatever
    matches no pattern is reported as complex.
    """
    records = analyze(clustering)
    by_key = {(r.t, r.group, r.direction): r for r in records}
    events: list[LabeledEvent] = []

    snapshots = clustering.snapshots
    for position in range(len(snapshots) - 1):
        earlier, later = snapshots[position], snapshots[position + 1]
        t = earlier.index

        successors: dict[str, list[str]] = {g.id: [] for g in earlier.groups}
        predecessors: dict[str, list[str]] = {h.id: [] for h in later.groups}
        for g in earlier.groups:
            for h in later.groups:
                if g.members & h.members:
                    successors[g.id].append(h.id)
                    predecessors[h.id].append(g.id)

        forward = {g.id: by_key[(earlier.index, g.id, Direction.FORWARD)] for g in earlier.groups}
        backward = {h.id: by_key[(later.index, h.id, Direction.BACKWARD)] for h in later.groups}

        matched_forward: set[str] = set()
        matched_backward: set[str] = set()
        boundary_events: list[LabeledEvent] = []

        for h in sorted(predecessors):
            if not predecessors[h]:
                boundary_events.append(LabeledEvent(t, LiteratureEvent.BIRTH, (), (h,)))
                matched_backward.add(h)
        for g in sorted(successors):
            if not successors[g]:
                boundary_events.append(LabeledEvent(t, LiteratureEvent.DEATH, (g,), ()))
                matched_forward.add(g)

        for h in sorted(predecessors):
            feeders = predecessors[h]
            if len(feeders) < 2 or backward[h].dominant[0] is not Archetype.MERGE:
                continue
            if all(forward[g].dominant[0] in _FEEDER_OK for g in feeders):
                boundary_events.append(
                    LabeledEvent(t, LiteratureEvent.MERGE, tuple(sorted(feeders)), (h,))
                )
                matched_backward.add(h)
                matched_forward.update(feeders)

        for g in sorted(successors):
            parts = successors[g]
            if len(parts) < 2 or forward[g].dominant[0] is not Archetype.SPLIT:
                continue
            if all(backward[h].dominant[0] in _SUCCESSOR_OK for h in parts):
                boundary_events.append(
                    LabeledEvent(t, LiteratureEvent.SPLIT, (g,), tuple(sorted(parts)))
                )
                matched_forward.add(g)
                matched_backward.update(parts)

        for g in sorted(successors):
            if len(successors[g]) != 1:
                continue
            h = successors[g][0]
            if predecessors[h] != [g]:
                continue
            label = literature_label(
                forward[g].dominant[0],
                backward[h].dominant[0],
                forward_outflow=forward[g].facets.outflow,
                backward_outflow=backward[h].facets.outflow,
                small_fraction=small_fraction,
            )
            if label in (LiteratureEvent.CONTINUE, LiteratureEvent.GROWTH, LiteratureEvent.SHRINK):
                boundary_events.append(LabeledEvent(t, label, (g,), (h,)))
                matched_forward.add(g)
                matched_backward.add(h)

        fallback: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
        for g in sorted(successors):
            if g not in matched_forward and successors[g]:
                fallback.add(((g,), tuple(sorted(successors[g]))))
        for h in sorted(predecessors):
            if h not in matched_backward and predecessors[h]:
                fallback.add((tuple(sorted(predecessors[h])), (h,)))
        for sources, targets in sorted(fallback):
            boundary_events.append(LabeledEvent(t, LiteratureEvent.COMPLEX, sources, targets))

        boundary_events.sort(key=lambda e: (e.label.value, e.sources, e.targets))
        events.extend(boundary_events)

    return events
