from __future__ import annotations

import pytest

from groupevo import (
    Direction,
    EventRecord,
    FacetScores,
    Group,
    Snapshot,
    TemporalClustering,
    event_weights,
    from_membership,
    typicality,
)


def build_record(t: int, group: str, direction: Direction, facets: FacetScores) -> EventRecord:
    weights = event_weights(facets, direction)
    top = typicality(weights)
    dominant = tuple(a for a, w in weights.items() if w == top)
    return EventRecord(
        t=t,
        group=group,
        direction=direction,
        facets=facets,
        weights=weights,
        typicality=top,
        dominant=dominant,
    )


@pytest.fixture
def identical_pair() -> TemporalClustering:
    return from_membership([[{"a", "b"}, {"c"}], [{"a", "b"}, {"c"}]])


@pytest.fixture
def mixed_record() -> EventRecord:
    # facets (1/3, 1/4, 1/4): reorganization-dominant hand fixture
    return build_record(1, "x", Direction.BACKWARD, FacetScores(1 / 3, 1 / 4, 1 / 4))


@pytest.fixture
def three_step() -> TemporalClustering:
    # small but not trivial: a merge, then a split plus a departure
    return from_membership(
        [
            [{"a", "b"}, {"c", "d"}, {"e"}],
            [{"a", "b", "c", "d"}, {"e", "f"}],
            [{"a", "b"}, {"c", "d"}, {"f"}],
        ]
    )


def write_partition_file(path, clustering: TemporalClustering) -> None:
    lines = []
    for snap in clustering.snapshots:
        for group in snap.groups:
            for element in sorted(group.members):
                lines.append(f"{snap.index}\t{group.id}\t{element}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
