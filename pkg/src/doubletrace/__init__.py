"""Double traces of graphs: closed walks that traverse every edge exactly
twice, under direction restrictions (strong, d-stable, parallel,
antiparallel, E-restricted, and mixed-graph variants).

Decision procedures return certified verdicts, the construction module
realizes every positive verdict as an explicit trace, and the enumeration
module provides an independent exhaustive oracle plus symmetry-class
enumeration.  The ``doubletrace`` command line wraps all of it.
"""

from .errors import (
    CapacityError,
    DoubleTraceError,
    InputError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    SurgeryInapplicableError,
)
from .graphs import (
    Component,
    ComponentReport,
    EdgeFragment,
    Graph,
    MixedGraph,
    Multigraph,
    automorphisms,
    components_with_parity,
    induced_edge_subgraph,
    is_connected,
    is_even_subgraph,
)
from .traces import (
    ANTIPARALLEL,
    PARALLEL,
    ClosedWalk,
    DoubleTrace,
    RestrictionSet,
    TransitionSystem,
    ValidationReport,
    check_restriction,
    classify_directions,
    is_d_stable,
    is_strong,
    repetition_components,
    transition_system,
    validate_double_trace,
)
from .feasibility import (
    FeasibilityAnswer,
    SpanningTreeCertificate,
    find_admissible_tree,
    has_antiparallel_d_stable_trace,
    has_antiparallel_strong_trace,
    has_d_stable_trace,
    has_E_restricted_d_stable_trace,
    has_E_restricted_d_stable_trace_mixed,
    has_E_restricted_double_trace,
    has_E_restricted_strong_trace,
    has_E_restricted_strong_trace_mixed,
    has_parallel_d_stable_trace,
    has_parallel_strong_trace,
    has_strong_trace,
    mixed_cut_condition,
    mixed_euler_feasible,
)
from .construction import (
    antiparallel_double_trace_with_repetitions_in,
    antiparallel_strong_trace,
    build_E_restricted_d_stable_trace,
    build_E_restricted_strong_trace,
    build_mixed_trace,
    euler_tour,
    merge_closed_walks,
    parallel_strong_trace,
    reduce_repetition,
)
from .enumeration import (
    EquivalenceClass,
    TraceQuery,
    canonical_form,
    count_raw_traces,
    enumerate_classes,
    enumerate_fixed_start,
    oracle_exists,
    oracle_find,
    orbit_size,
)
from .cli import parse_graph, render_graph

__all__ = [
    "ANTIPARALLEL",
    "PARALLEL",
    "CapacityError",
    "ClosedWalk",
    "Component",
    "ComponentReport",
    "DoubleTrace",
    "DoubleTraceError",
    "EdgeFragment",
    "EquivalenceClass",
    "FeasibilityAnswer",
    "Graph",
    "InputError",
    "InternalConsistencyError",
    "MixedGraph",
    "Multigraph",
    "ParseError",
    "PreconditionError",
    "RestrictionSet",
    "SpanningTreeCertificate",
    "SurgeryInapplicableError",
    "TraceQuery",
    "TransitionSystem",
    "ValidationReport",
    "antiparallel_double_trace_with_repetitions_in",
    "antiparallel_strong_trace",
    "automorphisms",
    "build_E_restricted_d_stable_trace",
    "build_E_restricted_strong_trace",
    "build_mixed_trace",
    "canonical_form",
    "check_restriction",
    "classify_directions",
    "components_with_parity",
    "count_raw_traces",
    "enumerate_classes",
    "enumerate_fixed_start",
    "euler_tour",
    "find_admissible_tree",
    "has_antiparallel_d_stable_trace",
    "has_antiparallel_strong_trace",
    "has_d_stable_trace",
    "has_E_restricted_d_stable_trace",
    "has_E_restricted_d_stable_trace_mixed",
    "has_E_restricted_double_trace",
    "has_E_restricted_strong_trace",
    "has_E_restricted_strong_trace_mixed",
    "has_parallel_d_stable_trace",
    "has_parallel_strong_trace",
    "has_strong_trace",
    "induced_edge_subgraph",
    "is_connected",
    "is_d_stable",
    "is_even_subgraph",
    "is_strong",
    "merge_closed_walks",
    "mixed_cut_condition",
    "mixed_euler_feasible",
    "oracle_exists",
    "oracle_find",
    "orbit_size",
    "parallel_strong_trace",
    "parse_graph",
    "reduce_repetition",
    "render_graph",
    "repetition_components",
    "transition_system",
    "validate_double_trace",
]
