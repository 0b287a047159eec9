"""File formats: interaction streams, partitions, attributes, exporters.

Input formats are line-oriented UTF-8 text. Interaction files carry
``timestamp u v`` per line (whitespace-separated, extra columns
ignored); partition files carry ``snapshot<TAB>group<TAB>element`` and
attribute files ``element<TAB>value``, both with ``#`` comments.
Exporters write atomically (temp file then rename) and produce
byte-identical output for identical input.
"""

from __future__ import annotations

import csv
import io as _stdio
import json
import logging
import os
import tempfile
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .baselines import EventGraph
from .core import Group, Snapshot, TemporalClustering, validate
from .errors import ConflictingAttribute, EmptyFile, ParseError
from .events import (
    BACKWARD_ARCHETYPES,
    FORWARD_ARCHETYPES,
    Archetype,
    EventRecord,
    archetypes_for,
)

log = logging.getLogger(__name__)


class Interaction(NamedTuple):
    timestamp: int
    u: str
    v: str


@dataclass(frozen=True)
class InteractionStream:
    """Timestamped pairwise contacts, sorted by timestamp."""

    records: tuple[Interaction, ...]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


@dataclass(frozen=True)
class WindowSpec:
    """Aggregation window: fixed duration, anchored at ``origin``.

    ``origin=None`` anchors at the stream's first timestamp. Windows are
    half-open: record t falls into window floor((t - origin)/duration).
    """

    duration: int
    origin: int | None = None

    def __post_init__(self) -> None:
        if self.duration <= 0:
            raise ValueError(f"window duration must be positive, got {self.duration}")


@dataclass(frozen=True)
class SnapshotGraph:
    """Weighted undirected edge list for one aggregation window."""

    window: int
    edges: tuple[tuple[str, str, int], ...]


def read_interactions(path: str | os.PathLike) -> InteractionStream:
    """Load and sort a ``timestamp u v`` interaction file."""
    records = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            fields = stripped.split()
            if len(fields) < 3:
                raise ParseError(lineno, f"expected 'timestamp u v', got {stripped!r}")
            try:
                timestamp = int(fields[0])
            except ValueError:
                raise ParseError(lineno, f"bad timestamp {fields[0]!r}") from None
            u, v = fields[1], fields[2]
            if u == v:
                raise ParseError(lineno, f"self-contact {u!r}")
            records.append(Interaction(timestamp, u, v))
    if not records:
        raise EmptyFile(f"no interactions in {path}")
    records.sort(key=lambda r: r.timestamp)
    return InteractionStream(tuple(records))


def aggregate(stream: InteractionStream, window: WindowSpec) -> list[SnapshotGraph]:
    """Bucket interactions into windows; edge weight counts contacts.

    Windows without any interaction are omitted; gaps are logged so a
    sparse stream does not silently collapse distant windows into an
    adjacent-looking sequence.
    """
    origin = window.origin if window.origin is not None else stream.records[0].timestamp
    per_window: dict[int, Counter] = {}
    for record in stream.records:
        index = (record.timestamp - origin) // window.duration
        edge = (record.u, record.v) if record.u <= record.v else (record.v, record.u)
        per_window.setdefault(index, Counter())[edge] += 1

    graphs = []
    previous = None
    for index in sorted(per_window):
        if previous is not None and index > previous + 1:
            log.warning(
                "no interactions in windows %d..%d (duration %d)",
                previous + 1,
                index - 1,
                window.duration,
            )
        previous = index
        edges = tuple(
            (u, v, count) for (u, v), count in sorted(per_window[index].items())
        )
        graphs.append(SnapshotGraph(window=index, edges=edges))
    return graphs


def read_partitions(path: str | os.PathLike) -> TemporalClustering:
    """Load ``snapshot<TAB>group<TAB>element`` lines into a validated clustering.

    Snapshot indices may be sparse in the file; they are compacted to
    0..n-1 preserving order. ``#`` lines are comments.
    """
    memberships: dict[int, dict[str, set[str]]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip() or stripped.lstrip().startswith("#"):
                continue
            fields = stripped.split("\t")
            if len(fields) < 3:
                raise ParseError(
                    lineno, f"expected 'snapshot<TAB>group<TAB>element', got {stripped!r}"
                )
            try:
                index = int(fields[0])
            except ValueError:
                raise ParseError(lineno, f"bad snapshot index {fields[0]!r}") from None
            if index < 0:
                raise ParseError(lineno, f"negative snapshot index {index}")
            group_id = fields[1]
            element = fields[2].strip()
            if not element or any(c.isspace() for c in element):
                raise ParseError(lineno, f"bad element id {fields[2]!r}")
            memberships.setdefault(index, {}).setdefault(group_id, set()).add(element)

    snapshots = []
    for position, index in enumerate(sorted(memberships)):
        groups = tuple(
            Group(id=gid, members=frozenset(members))
            for gid, members in sorted(memberships[index].items())
        )
        snapshots.append(Snapshot(index=position, groups=groups))
    clustering = TemporalClustering(tuple(snapshots))
    validate(clustering)
    return clustering


def write_partitions(clustering: TemporalClustering, path: str | os.PathLike) -> None:
    """Write a clustering back out in the partition file format."""
    lines = []
    for snap in clustering.snapshots:
        for group in sorted(snap.groups, key=lambda g: g.id):
            for element in sorted(group.members):
                lines.append(f"{snap.index}\t{group.id}\t{element}")
    _atomic_write(path, "\n".join(lines) + "\n" if lines else "")


def read_attributes(path: str | os.PathLike) -> dict[str, str]:
    """Load ``element<TAB>value`` lines; conflicting duplicates are an error."""
    table: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip() or stripped.lstrip().startswith("#"):
                continue
            fields = stripped.split("\t")
            if len(fields) < 2:
                raise ParseError(lineno, f"expected 'element<TAB>value', got {stripped!r}")
            element, value = fields[0], fields[1]
            if element in table and table[element] != value:
                raise ConflictingAttribute(
                    f"element {element!r} has values {table[element]!r} and {value!r}"
                )
            table[element] = value
    return table


def _atomic_write(path: str | os.PathLike, data: str) -> None:
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, temp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(data)
        os.replace(temp_path, path)
    except BaseException:
        try:
            os.unlink(temp_path)
        except OSError:
            pass
        raise


def _record_payload(record: EventRecord) -> dict:
    facets: dict[str, float] = {
        "U": record.facets.unicity,
        "I": record.facets.identity,
        "O": record.facets.outflow,
    }
    if record.facets.metadata is not None:
        facets["M"] = record.facets.metadata
    return {
        "t": record.t,
        "group": record.group,
        "direction": record.direction.value,
        "facets": facets,
        "weights": {a.label: w for a, w in record.weights.items()},
        "typicality": record.typicality,
        "dominant": [a.label for a in record.dominant],
    }


def events_to_json(records: Sequence[EventRecord]) -> str:
    return json.dumps([_record_payload(r) for r in records], indent=2) + "\n"


# CSV columns: facets as in the JSON payload, then every archetype of
# both directions (the off-direction cells stay empty).
_CSV_COLUMNS = (
    ["t", "group", "direction", "U", "I", "O", "M"]
    + [a.label for a in BACKWARD_ARCHETYPES]
    + [a.label for a in FORWARD_ARCHETYPES if a is not Archetype.CONTINUE]
    + ["typicality", "dominant"]
)


def events_to_csv(records: Sequence[EventRecord]) -> str:
    buffer = _stdio.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for record in records:
        row: dict[str, str] = {
            "t": str(record.t),
            "group": record.group,
            "direction": record.direction.value,
            "U": repr(record.facets.unicity),
            "I": repr(record.facets.identity),
            "O": repr(record.facets.outflow),
            "M": "" if record.facets.metadata is None else repr(record.facets.metadata),
            "typicality": repr(record.typicality),
            "dominant": ";".join(a.label for a in record.dominant),
        }
        for archetype in archetypes_for(record.direction):
            row[archetype.label] = repr(record.weights[archetype])
        writer.writerow([row.get(column, "") for column in _CSV_COLUMNS])
    return buffer.getvalue()


def export_events(
    records: Sequence[EventRecord], format: str, path: str | os.PathLike
) -> None:
    """Write event records as JSON or CSV with full numeric precision."""
    if format == "json":
        _atomic_write(path, events_to_json(records))
    elif format == "csv":
        _atomic_write(path, events_to_csv(records))
    else:
        raise ValueError(f"unknown format {format!r} (expected 'json' or 'csv')")


def event_graph_to_dot(graph: EventGraph) -> str:
    lines = ["digraph event_graph {"]
    for node in sorted(graph.nodes):
        label = graph.labels.get(node)
        label_text = label.value if label is not None else ""
        lines.append(f'    "{node[0]}_{node[1]}" [label="{label_text}"];')
    for src, dst, flow in sorted(graph.edges):
        lines.append(f'    "{src[0]}_{src[1]}" -> "{dst[0]}_{dst[1]}" [flow={flow}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_event_graph(graph: EventGraph, path: str | os.PathLike) -> None:
    """Write a baseline event graph in DOT format, nodes named ``t_id``."""
    _atomic_write(path, event_graph_to_dot(graph))


def sankey_payload(clustering: TemporalClustering) -> dict:
    nodes = []
    for snap in clustering.snapshots:
        for group in sorted(snap.groups, key=lambda g: g.id):
            nodes.append({"id": f"{snap.index}_{group.id}", "size": group.size})
    links = []
    snapshots = clustering.snapshots
    for position in range(len(snapshots) - 1):
        earlier, later = snapshots[position], snapshots[position + 1]
        for g in sorted(earlier.groups, key=lambda g: g.id):
            for h in sorted(later.groups, key=lambda g: g.id):
                value = len(g.members & h.members)
                if value >= 1:
                    links.append(
                        {
                            "source": f"{earlier.index}_{g.id}",
                            "target": f"{later.index}_{h.id}",
                            "value": value,
                        }
                    )
    return {"nodes": nodes, "links": links}


def export_sankey(clustering: TemporalClustering, path: str | os.PathLike) -> None:
    """Write the member flow between adjacent snapshots as sankey JSON."""
    _atomic_write(path, json.dumps(sankey_payload(clustering), indent=2) + "\n")
