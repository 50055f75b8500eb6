"""Random Apollonian Network generation and analysis."""

from ._ran import (
    Graph,
    Network,
    RanError,
    ResourceError,
    constants,
    degree_histogram,
    diameter_estimate,
    diameter_exact,
    enumerate_small,
    expected_depth_profile,
    export_edges,
    fit_power_law_exponent,
    generate,
    import_edges,
    moment_bound,
    moment_bound_check,
    read_snapshot,
    rising_factorial,
    top_k_degrees,
    top_k_eigenvalues,
    typical_distance,
    verify,
    waiting_survival_exact,
    waiting_time_trials,
    write_snapshot,
)

__all__ = [
    "Graph",
    "Network",
    "RanError",
    "ResourceError",
    "constants",
    "degree_histogram",
    "diameter_estimate",
    "diameter_exact",
    "enumerate_small",
    "expected_depth_profile",
    "export_edges",
    "fit_power_law_exponent",
    "generate",
    "import_edges",
    "moment_bound",
    "moment_bound_check",
    "read_snapshot",
    "rising_factorial",
    "top_k_degrees",
    "top_k_eigenvalues",
    "typical_distance",
    "verify",
    "waiting_survival_exact",
    "waiting_time_trials",
    "write_snapshot",
]
