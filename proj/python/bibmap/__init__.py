"""Unified map layout and resolution-parameterized clustering of weighted networks."""

from ._core import (
    InfeasibleError,
    Network,
    clustering_cost,
    clustering_quality,
    compute_layout,
    connected_components,
    exhaustive_best_partition,
    gamma_sweep,
    generate_appendix_b,
    generate_ring_of_cliques,
    local_move_refinement,
    mapping_objective,
    optimize_clustering,
    render_svg,
)

__all__ = [
    "InfeasibleError",
    "Network",
    "clustering_cost",
    "clustering_quality",
    "compute_layout",
    "connected_components",
    "exhaustive_best_partition",
    "gamma_sweep",
    "generate_appendix_b",
    "generate_ring_of_cliques",
    "local_move_refinement",
    "mapping_objective",
    "optimize_clustering",
    "render_svg",
]
