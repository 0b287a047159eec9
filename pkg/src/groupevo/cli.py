"""Command-line interface.

Subcommands: validate, events, stability, scan, aggregate, baseline,
export. Every flag can also come from a ``key=value`` config file passed
with --config; explicit command-line flags win. Exit codes: 0 success,
1 data/validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .analysis import scan_windows, stability
from .baselines import asur_events, greene_event_graph, hopcroft_match, jaccard_match
from .core import Direction
from .errors import GroupEvoError, MissingPartition
from .events import analyze
from .io import (
    WindowSpec,
    aggregate,
    event_graph_to_dot,
    events_to_csv,
    events_to_json,
    export_event_graph,
    export_events,
    export_sankey,
    read_attributes,
    read_interactions,
    read_partitions,
)

# Flag name -> coercion for config-file values.
_CONFIG_TYPES = {
    "attrs": str,
    "direction": str,
    "boundaries": lambda v: v.lower() in ("1", "true", "yes", "on"),
    "out": str,
    "format": str,
    "theta": float,
    "tau": float,
    "dot": str,
    "interactions": str,
    "durations": str,
    "partitions_dir": str,
    "duration": int,
    "out_dir": str,
}


def _knows_dest(parser: argparse.ArgumentParser, dest: str) -> bool:
    return any(action.dest == dest for action in parser._actions)


def _load_config(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {stripped!r}")
            key, _, raw = stripped.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CONFIG_TYPES:
                raise ValueError(f"{path}:{lineno}: unknown option {key!r}")
            values[key] = _CONFIG_TYPES[key](raw.strip())
    return values


def _build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="groupevo",
        description="Facet-based event analysis for evolving groups in temporal snapshots.",
    )
    parser.add_argument("--config", help="key=value file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers: list[argparse.ArgumentParser] = []

    p = sub.add_parser("validate", help="check a partition file")
    p.add_argument("partitions")
    subparsers.append(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("events", help="compute per-group event records")
    p.add_argument("partitions")
    p.add_argument("--attrs", help="element attribute file for the metadata facet")
    p.add_argument("--direction", choices=("both", "fw", "bw"), default="both")
    p.add_argument(
        "--boundaries",
        action="store_true",
        help="treat missing boundary snapshots as empty partitions",
    )
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    subparsers.append(p)
    p.set_defaults(func=_cmd_events)

    p = sub.add_parser("stability", help="stability score of a clustering")
    p.add_argument("partitions")
    subparsers.append(p)
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("scan", help="stability score per aggregation duration")
    p.add_argument("--interactions", required=True)
    p.add_argument("--durations", required=True, help="comma-separated seconds, e.g. 60,900")
    p.add_argument(
        "--partitions-dir",
        required=True,
        dest="partitions_dir",
        help="directory with one <duration>.tsv partition file per duration",
    )
    subparsers.append(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("aggregate", help="dump per-window edge lists for external detectors")
    p.add_argument("interactions")
    p.add_argument("--duration", type=int, required=True)
    p.add_argument("--out-dir", dest="out_dir", required=True)
    subparsers.append(p)
    p.set_defaults(func=_cmd_aggregate)

    p = sub.add_parser("baseline", help="run a threshold-based comparison framework")
    p.add_argument("framework", choices=("greene", "asur", "match"))
    p.add_argument("partitions")
    p.add_argument("--theta", type=float, default=0.1, help="edge threshold (greene)")
    p.add_argument("--tau", type=float, default=0.5, help="match threshold (asur, match)")
    p.add_argument("--dot", help="write the event graph in DOT format (greene)")
    subparsers.append(p)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("export", help="write sankey flows or event records")
    p.add_argument("what", choices=("sankey", "events"))
    p.add_argument("partitions")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    subparsers.append(p)
    p.set_defaults(func=_cmd_export)

    return parser, subparsers


def _cmd_validate(args) -> int:
    clustering = read_partitions(args.partitions)
    elements = set()
    for snap in clustering:
        elements |= snap.universe
    groups = sum(len(snap.groups) for snap in clustering)
    print(f"ok: {len(clustering)} snapshots, {groups} groups, {len(elements)} elements")
    return 0


def _records_for(args):
    clustering = read_partitions(args.partitions)
    attrs = read_attributes(args.attrs) if args.attrs else None
    records = analyze(clustering, attrs, boundaries=args.boundaries)
    if args.direction == "fw":
        records = [r for r in records if r.direction is Direction.FORWARD]
    elif args.direction == "bw":
        records = [r for r in records if r.direction is Direction.BACKWARD]
    return records


def _cmd_events(args) -> int:
    records = _records_for(args)
    if args.out:
        export_events(records, args.format, args.out)
    else:
        text = events_to_json(records) if args.format == "json" else events_to_csv(records)
        sys.stdout.write(text)
    return 0


def _cmd_stability(args) -> int:
    clustering = read_partitions(args.partitions)
    report = stability(clustering)
    print(f"eta\t{report.eta!r}")
    print(f"events\t{report.event_count}")
    for t, mean in report.contributions:
        print(f"boundary\t{t}\t{mean!r}")
    return 0


def _cmd_scan(args) -> int:
    stream = read_interactions(args.interactions)
    durations = [int(d) for d in args.durations.split(",") if d.strip()]
    partitions = {}
    for duration in durations:
        path = os.path.join(args.partitions_dir, f"{duration}.tsv")
        if not os.path.exists(path):
            raise MissingPartition(f"duration {duration}: missing partition file {path}")
        partitions[duration] = read_partitions(path)
    table = scan_windows(stream, durations, partitions)
    print("duration\teta")
    for duration, eta in table.items():
        print(f"{duration}\t{eta!r}")
    return 0


def _cmd_aggregate(args) -> int:
    stream = read_interactions(args.interactions)
    graphs = aggregate(stream, WindowSpec(args.duration))
    os.makedirs(args.out_dir, exist_ok=True)
    for graph in graphs:
        path = os.path.join(args.out_dir, f"window_{graph.window}.tsv")
        with open(path, "w", encoding="utf-8") as handle:
            for u, v, weight in graph.edges:
                handle.write(f"{u}\t{v}\t{weight}\n")
    print(f"wrote {len(graphs)} window edge lists to {args.out_dir}")
    return 0


def _cmd_baseline(args) -> int:
    clustering = read_partitions(args.partitions)
    if args.framework == "greene":
        graph = greene_event_graph(clustering, theta=args.theta)
        for node in sorted(graph.nodes):
            print(f"{node[0]}_{node[1]}\t{graph.labels[node].value}")
        if args.dot:
            export_event_graph(graph, args.dot)
    elif args.framework == "asur":
        snapshots = clustering.snapshots
        for position in range(len(snapshots) - 1):
            earlier, later = snapshots[position], snapshots[position + 1]
            for event in asur_events(earlier, later, tau=args.tau):
                sources = ",".join(event.sources) or "-"
                targets = ",".join(event.targets) or "-"
                print(f"{earlier.index}\t{event.label.value}\t{sources}\t{targets}")
    else:
        snapshots = clustering.snapshots
        print("t\tsource\ttarget\tjaccard\thopcroft\tmatched")
        for position in range(len(snapshots) - 1):
            earlier, later = snapshots[position], snapshots[position + 1]
            for g in sorted(earlier.groups, key=lambda g: g.id):
                for h in sorted(later.groups, key=lambda g: g.id):
                    if not g.members & h.members:
                        continue
                    matched, jaccard = jaccard_match(g.members, h.members, args.tau)
                    match_score = hopcroft_match(g.members, h.members)
                    print(
                        f"{earlier.index}\t{g.id}\t{h.id}\t{jaccard!r}\t"
                        f"{match_score!r}\t{str(matched).lower()}"
                    )
    return 0


def _cmd_export(args) -> int:
    clustering = read_partitions(args.partitions)
    if args.what == "sankey":
        export_sankey(clustering, args.out)
    else:
        records = analyze(clustering)
        export_events(records, args.format, args.out)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = _build_parser()

    # Apply config-file defaults before parsing so explicit flags win.
    # Subparsers re-apply their own argument defaults onto a fresh
    # namespace, so the config defaults must reach each of them too.
    config_path = None
    for position, token in enumerate(argv):
        if token == "--config" and position + 1 < len(argv):
            config_path = argv[position + 1]
        elif token.startswith("--config="):
            config_path = token.split("=", 1)[1]
    if config_path:
        try:
            defaults = _load_config(config_path)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
        parser.set_defaults(**defaults)
        for subparser in subparsers:
            subparser.set_defaults(
                **{k: v for k, v in defaults.items() if _knows_dest(subparser, k)}
            )

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GroupEvoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
