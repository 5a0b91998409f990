"""Exact and (1 + eps)-approximate minimum cycle mean via min-plus matrix powers."""
from mcmean.engine import (
    Guards,
    GuardError,
    McmResult,
    approx_mcm,
    delta_from_power,
    delta_oracle,
    exact_mcm_via_power,
    karp_mcm,
    rational_in_interval,
    solve,
)
from mcmean.graph import (
    Graph,
    GraphError,
    brute_force_mcm,
    strongly_connected_components,
    validate_graph,
    zero_mean_vertices,
)
from mcmean.kernels import INF, active_backend, available_backends
from mcmean.minplus import (
    ApproxParams,
    approx_minplus,
    approx_power,
    minplus_power,
    minplus_product,
    small_entry_minplus,
    weight_matrix,
)

__version__ = "0.1.0"
