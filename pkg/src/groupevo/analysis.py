"""System-wide summaries built on top of the per-group event records."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .core import Direction, TemporalClustering
from .errors import (
    EmptyInput,
    InconsistentInput,
    MissingPartition,
    TooFewSnapshots,
    UnknownSnapshot,
)
from .events import Archetype, EventRecord, analyze, archetypes_for


@dataclass(frozen=True)
class StabilityReport:
    """Mean continue weight over all directed events, plus a per-boundary view.

    ``contributions`` holds one (left snapshot index, mean continue
    weight) row per adjacent snapshot pair.
    """

    eta: float
    contributions: tuple[tuple[int, float], ...]
    event_count: int


def stability(clustering: TemporalClustering) -> StabilityReport:
    """How unchanged groups stay from step to step, in [0, 1].

    Averages the continue weight over every directed event (both
    directions, interior boundaries only, so observation edges do not
    manufacture births or deaths).
    """
    if len(clustering.snapshots) < 2:
        raise TooFewSnapshots("stability needs at least two snapshots")
    records = analyze(clustering)
    per_boundary: dict[int, list[float]] = {}
    for record in records:
        position = clustering.position_of(record.t)
        if record.direction is Direction.BACKWARD:
            boundary = clustering.snapshots[position - 1].index
        else:
            boundary = record.t
        per_boundary.setdefault(boundary, []).append(record.weights[Archetype.CONTINUE])

    all_weights = [w for ws in per_boundary.values() for w in ws]
    eta = math.fsum(all_weights) / len(all_weights)
    contributions = tuple(
        (t, math.fsum(ws) / len(ws)) for t, ws in sorted(per_boundary.items())
    )
    return StabilityReport(eta=eta, contributions=contributions, event_count=len(all_weights))


# A partition source for scan_windows: either a ready mapping from
# duration to clustering, or a callable building one from the aggregated
# per-window graphs.
PartitionSource = (
    Mapping[int, TemporalClustering]
    | Callable[[int, list], TemporalClustering | None]
)


def scan_windows(
    stream,
    durations: Sequence[int],
    partitions: PartitionSource,
) -> dict[int, float]:
    """Stability score per aggregation duration, sorted by duration.

    Partitioning itself is external: ``partitions`` either maps each
    duration to a clustering or is called with (duration, snapshot
    graphs) and must return one. ``stream`` is only needed for the
    callable form, where it is aggregated at each duration first.
    """
    for d in durations:
        if d <= 0:
            raise ValueError(f"durations must be positive, got {d}")

    table: dict[int, float] = {}
    for duration in sorted(set(durations)):
        if callable(partitions):
            if stream is None:
                raise MissingPartition(
                    f"duration {duration}: no interaction stream to aggregate"
                )
            from .io import WindowSpec, aggregate

            graphs = aggregate(stream, WindowSpec(duration))
            clustering = partitions(duration, graphs)
        else:
            clustering = partitions.get(duration)
        if clustering is None:
            raise MissingPartition(f"no partition supplied for duration {duration}")
        table[duration] = stability(clustering).eta
    return table


@dataclass(frozen=True)
class TypicalitySummary:
    values: tuple[float, ...]
    count: int
    mean: float
    quartiles: tuple[float, float, float]


@dataclass(frozen=True)
class TypicalityDistribution:
    """Typicality values bucketed by (direction, first dominant archetype)."""

    buckets: Mapping[tuple[Direction, Archetype], TypicalitySummary]
    total: int


def typicality_distribution(records: Sequence[EventRecord]) -> TypicalityDistribution:
    if not records:
        raise EmptyInput("no event records to summarize")
    grouped: dict[tuple[Direction, Archetype], list[float]] = {}
    for record in records:
        grouped.setdefault((record.direction, record.dominant[0]), []).append(
            record.typicality
        )
    buckets = {}
    for key, values in grouped.items():
        if len(values) >= 2:
            q1, median, q3 = statistics.quantiles(values, n=4, method="inclusive")
        else:
            q1 = median = q3 = values[0]
        buckets[key] = TypicalitySummary(
            values=tuple(values),
            count=len(values),
            mean=math.fsum(values) / len(values),
            quartiles=(q1, median, q3),
        )
    return TypicalityDistribution(buckets=buckets, total=len(records))


@dataclass(frozen=True)
class EventFlowSeries:
    """Size-weighted archetype mass per snapshot and direction.

    ``masses[(t, direction, archetype)]`` sums |G| times the archetype
    weight over the groups of snapshot t, so for each (t, direction) the
    masses add up to the total population covered by scored groups.
    """

    masses: Mapping[tuple[int, Direction, Archetype], float]

    def at(self, t: int, direction: Direction) -> dict[Archetype, float]:
        return {
            a: self.masses.get((t, direction, a), 0.0) for a in archetypes_for(direction)
        }

    def total_mass(self, t: int, direction: Direction) -> float:
        return math.fsum(self.at(t, direction).values())


def event_flow_series(
    records: Sequence[EventRecord], clustering: TemporalClustering
) -> EventFlowSeries:
    """Aggregate record weights into per-snapshot archetype mass."""
    masses: dict[tuple[int, Direction, Archetype], float] = {}
    for record in records:
        try:
            group = clustering.snapshot(record.t).group(record.group)
        except (UnknownSnapshot, KeyError):
            raise InconsistentInput(
                f"record references unknown group {record.group!r} at snapshot {record.t}"
            ) from None
        for archetype, weight in record.weights.items():
            key = (record.t, record.direction, archetype)
            masses[key] = masses.get(key, 0.0) + group.size * weight
    return EventFlowSeries(masses=masses)
