"""Threshold-based event frameworks from earlier work, for comparison.

These are deliberately simple reimplementations of the classic
matching rules: Jaccard matching with a cutoff, the min-fraction match
function, event-graph node labeling by degree, and the strict
three-condition merge/split test. They share the package's snapshot
types so results can be compared side by side with the facet approach.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Set

from .core import ElementId, Snapshot, TemporalClustering
from .errors import EmptySet

Node = tuple[int, str]  # (snapshot index, group id)


class BaselineLabel(Enum):
    CONTINUE = "Continue"
    SPLIT = "Split"
    MERGE = "Merge"
    BIRTH = "Birth"
    DEATH = "Death"
    EXPANSION = "Expansion"
    CONTRACTION = "Contraction"
    UNLABELED = "Unlabeled"


@dataclass(frozen=True)
class EventGraph:
    """Bipartite links between adjacent-snapshot groups plus node labels.

    Edges are (source node, target node, flow) with flow the shared
    member count; labels map every node to its baseline event label.
    """

    nodes: tuple[Node, ...]
    edges: tuple[tuple[Node, Node, int], ...]
    labels: Mapping[Node, BaselineLabel]

    def out_degree(self, node: Node) -> int:
        return sum(1 for src, _, _ in self.edges if src == node)

    def in_degree(self, node: Node) -> int:
        return sum(1 for _, dst, _ in self.edges if dst == node)


def jaccard_match(c1: Set[ElementId], c2: Set[ElementId], tau: float) -> tuple[bool, float]:
    """Jaccard overlap of two groups and whether it clears the threshold."""
    if not c1 or not c2:
        raise EmptySet("jaccard match needs two non-empty sets")
    score = len(c1 & c2) / len(c1 | c2)
    return score >= tau, score


def hopcroft_match(c1: Set[ElementId], c2: Set[ElementId]) -> float:
    """min(|c1 & c2|/|c1|, |c1 & c2|/|c2|), the conservative match score."""
    if not c1 or not c2:
        raise EmptySet("match function needs two non-empty sets")
    shared = len(c1 & c2)
    return min(shared / len(c1), shared / len(c2))


# Size-ratio cutoffs separating Expansion/Contraction from Continue for
# one-to-one matched nodes.
EXPANSION_RATIO = 1.25
CONTRACTION_RATIO = 0.8


def greene_event_graph(clustering: TemporalClustering, theta: float = 0.1) -> EventGraph:
    """Event graph with Jaccard-thresholded edges and degree-based labels.

    An out-degree of two or more marks a Split, an in-degree of two or
    more a Merge; a missing match marks a Birth (no predecessor) or a
    Death (no successor), except at the observation boundary where that
    side does not exist. One-to-one matches become Continue, Expansion,
    or Contraction depending on the size ratio against the matched
    partner.
    """
    snapshots = clustering.snapshots
    nodes: list[Node] = []
    sizes: dict[Node, int] = {}
    for snap in snapshots:
        for g in sorted(snap.groups, key=lambda g: g.id):
            node = (snap.index, g.id)
            nodes.append(node)
            sizes[node] = g.size

    edges: list[tuple[Node, Node, int]] = []
    for position in range(len(snapshots) - 1):
        earlier, later = snapshots[position], snapshots[position + 1]
        for g in sorted(earlier.groups, key=lambda g: g.id):
            for h in sorted(later.groups, key=lambda g: g.id):
                flow = len(g.members & h.members)
                if flow == 0:
                    continue
                matched, _ = jaccard_match(g.members, h.members, theta)
                if matched:
                    edges.append(((earlier.index, g.id), (later.index, h.id), flow))

    out_links: dict[Node, list[Node]] = {n: [] for n in nodes}
    in_links: dict[Node, list[Node]] = {n: [] for n in nodes}
    for src, dst, _ in edges:
        out_links[src].append(dst)
        in_links[dst].append(src)

    first = snapshots[0].index if snapshots else None
    last = snapshots[-1].index if snapshots else None
    labels: dict[Node, BaselineLabel] = {}
    for node in nodes:
        t = node[0]
        n_out, n_in = len(out_links[node]), len(in_links[node])
        if n_out >= 2:
            labels[node] = BaselineLabel.SPLIT
        elif n_in >= 2:
            labels[node] = BaselineLabel.MERGE
        elif t != first and n_in == 0:
            labels[node] = BaselineLabel.BIRTH
        elif t != last and n_out == 0:
            labels[node] = BaselineLabel.DEATH
        else:
            if n_out == 1:
                ratio = sizes[out_links[node][0]] / sizes[node]
            elif n_in == 1:
                ratio = sizes[node] / sizes[in_links[node][0]]
            else:
                labels[node] = BaselineLabel.UNLABELED
                continue
            if ratio >= EXPANSION_RATIO:
                labels[node] = BaselineLabel.EXPANSION
            elif ratio <= CONTRACTION_RATIO:
                labels[node] = BaselineLabel.CONTRACTION
            else:
                labels[node] = BaselineLabel.CONTINUE

    return EventGraph(nodes=tuple(nodes), edges=tuple(edges), labels=labels)


@dataclass(frozen=True)
class BaselineEvent:
    """One detected pattern: sources at t feeding targets at t+1."""

    label: BaselineLabel
    sources: tuple[str, ...]
    targets: tuple[str, ...]


def _pair_overlap(a: Set[ElementId], b: Set[ElementId]) -> float:
    return len(a & b) / max(len(a), len(b))


def asur_events(
    snapshot: Snapshot, following: Snapshot, tau: float = 0.5
) -> list[BaselineEvent]:
    """Strict merge/split/birth/death detection between two snapshots.

    A merge of (ci, cj) into c' needs the union to overlap c' beyond
    ``tau`` relative to the larger side, and each part to put more than
    half of itself into c'. Splits are the exact time mirror. A group
    overlapping nothing beyond ``tau`` on the other side is a birth
    (later side) or a death (earlier side).
    """
    earlier = sorted(snapshot.groups, key=lambda g: g.id)
    later = sorted(following.groups, key=lambda g: g.id)
    events: list[BaselineEvent] = []

    for target in later:
        for i, ci in enumerate(earlier):
            for cj in earlier[i + 1 :]:
                union = ci.members | cj.members
                joint = len(union & target.members) / max(len(union), target.size)
                if (
                    joint > tau
                    and len(ci.members & target.members) > ci.size / 2
                    and len(cj.members & target.members) > cj.size / 2
                ):
                    events.append(
                        BaselineEvent(
                            BaselineLabel.MERGE,
                            tuple(sorted((ci.id, cj.id))),
                            (target.id,),
                        )
                    )

    for source in earlier:
        for i, ci in enumerate(later):
            for cj in later[i + 1 :]:
                union = ci.members | cj.members
                joint = len(union & source.members) / max(len(union), source.size)
                if (
                    joint > tau
                    and len(ci.members & source.members) > ci.size / 2
                    and len(cj.members & source.members) > cj.size / 2
                ):
                    events.append(
                        BaselineEvent(
                            BaselineLabel.SPLIT,
                            (source.id,),
                            tuple(sorted((ci.id, cj.id))),
                        )
                    )

    for target in later:
        if all(_pair_overlap(g.members, target.members) <= tau for g in earlier):
            events.append(BaselineEvent(BaselineLabel.BIRTH, (), (target.id,)))
    for source in earlier:
        if all(_pair_overlap(source.members, g.members) <= tau for g in later):
            events.append(BaselineEvent(BaselineLabel.DEATH, (source.id,), ()))

    return events
