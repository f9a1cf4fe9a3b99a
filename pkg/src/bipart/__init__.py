"""Biclique edge partitions of graphs.

Computing, bounding, and certifying partitions of a graph's edge set into
complete bipartite subgraphs: exact branch-and-bound solvers for the
bipartition number and its star-free variant, the inertia lower bound,
constructive upper bounds from independent sets and induced bicliques,
edge-coverage certificates, and a seeded random-graph experiment harness.
"""

__version__ = "0.1.0"

from .graphs import (
    AlphaResult,
    GnpSpec,
    Graph,
    VertexSet,
    common_neighborhood,
    density_deviation,
    edge_count_within,
    independence_number_exact,
    independent_set_greedy,
    independent_set_search,
    induced_subgraph,
    max_balanced_biclique_side,
    parse_edge_list,
    format_edge_list,
    read_edge_list,
    write_edge_list,
    sample_gnp,
)
from .spectral import InertiaSignature, graham_pollak_lower_bound, inertia
from .partition import (
    EXACT,
    INFINITY,
    LOWER_BOUND_ONLY,
    Biclique,
    BicliquePartition,
    SolveResult,
    largest_induced_biclique,
    normalize_stars_first,
    partition_number_exact,
    star_decomposition,
    star_plus_biclique_decomposition,
    strong_partition_number_exact,
    validate_partition,
)
from .coverage import (
    CoverageBound,
    CoverageFamily,
    CoverageTrace,
    FamilySplit,
    PeelingError,
    WitnessPair,
    blocked_edge_count,
    classify_family,
    covered_edges,
    exclusive_split,
    max_coverage_exact,
    max_coverage_greedy,
    peel_witness,
    replay_trace,
    shielded_edge_count,
    uncovered_lower_bound,
)
from .harness import (
    ExperimentConfig,
    Report,
    TrialRecord,
    emit_report,
    run_bounds_experiment,
    run_biclique_side_check,
    run_coverage_soundness,
    run_density_check,
    run_experiment,
)
