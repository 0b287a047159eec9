"""Facet-based event analysis for evolving groups in temporal snapshot data."""

from .analysis import (
    EventFlowSeries,
    StabilityReport,
    TypicalityDistribution,
    event_flow_series,
    scan_windows,
    stability,
    typicality_distribution,
)
from .baselines import (
    BaselineEvent,
    BaselineLabel,
    EventGraph,
    asur_events,
    greene_event_graph,
    hopcroft_match,
    jaccard_match,
)
from .core import (
    AttributeTable,
    Direction,
    ElementId,
    Group,
    Snapshot,
    TemporalClustering,
    from_membership,
    reversed_clustering,
    universe_at,
    validate,
)
from .errors import (
    BoundarySnapshot,
    ConflictingAttribute,
    EmptyFile,
    EmptyInput,
    EmptySet,
    FacetOutOfRange,
    GroupEvoError,
    InconsistentInput,
    MissingAttribute,
    MissingPartition,
    NoReferences,
    ParseError,
    TooFewSnapshots,
    UnknownSnapshot,
    ValidationError,
    Violation,
    ViolationKind,
)
from .events import (
    BACKWARD_ARCHETYPES,
    FORWARD_ARCHETYPES,
    REVERSAL_DUAL,
    Archetype,
    EventRecord,
    LabeledEvent,
    LiteratureEvent,
    analyze,
    archetypes_for,
    event_weights,
    literature_events,
    literature_label,
    typicality,
)
from .facets import (
    FacetScores,
    ReferenceSets,
    attribute_entropy,
    attribute_entropy_change,
    facet_scores,
    identity,
    outflow,
    reference_sets,
    unicity,
)
from .io import (
    InteractionStream,
    SnapshotGraph,
    WindowSpec,
    aggregate,
    export_event_graph,
    export_events,
    export_sankey,
    read_attributes,
    read_interactions,
    read_partitions,
    write_partitions,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeTable",
    "Archetype",
    "BACKWARD_ARCHETYPES",
    "BaselineEvent",
    "BaselineLabel",
    "BoundarySnapshot",
    "ConflictingAttribute",
    "Direction",
    "ElementId",
    "EmptyFile",
    "EmptyInput",
    "EmptySet",
    "EventFlowSeries",
    "EventGraph",
    "EventRecord",
    "FORWARD_ARCHETYPES",
    "FacetOutOfRange",
    "FacetScores",
    "Group",
    "GroupEvoError",
    "InconsistentInput",
    "InteractionStream",
    "LabeledEvent",
    "LiteratureEvent",
    "MissingAttribute",
    "MissingPartition",
    "NoReferences",
    "ParseError",
    "REVERSAL_DUAL",
    "ReferenceSets",
    "Snapshot",
    "SnapshotGraph",
    "StabilityReport",
    "TemporalClustering",
    "TooFewSnapshots",
    "TypicalityDistribution",
    "UnknownSnapshot",
    "ValidationError",
    "Violation",
    "ViolationKind",
    "WindowSpec",
    "aggregate",
    "analyze",
    "archetypes_for",
    "asur_events",
    "attribute_entropy",
    "attribute_entropy_change",
    "event_flow_series",
    "event_weights",
    "export_event_graph",
    "export_events",
    "export_sankey",
    "facet_scores",
    "from_membership",
    "greene_event_graph",
    "hopcroft_match",
    "identity",
    "jaccard_match",
    "literature_events",
    "literature_label",
    "outflow",
    "read_attributes",
    "read_interactions",
    "read_partitions",
    "reference_sets",
    "reversed_clustering",
    "scan_windows",
    "stability",
    "typicality",
    "typicality_distribution",
    "unicity",
    "universe_at",
    "validate",
    "write_partitions",
]
