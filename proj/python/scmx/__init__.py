"""Python face of the two-tier memory hierarchy simulator."""

from ._core import (
    ConfigError,
    amat_unloaded,
    dram_device_json,
    generate_trace,
    hierarchy_cost,
    hot_fraction,
    miss_ratio_curve,
    parse_fraction,
    scm_device_json,
    simulate_cache,
    simulate_hierarchy,
    trace_footprint,
    __version__,
)

__all__ = [
    "ConfigError",
    "amat_unloaded",
    "dram_device_json",
    "generate_trace",
    "hierarchy_cost",
    "hot_fraction",
    "miss_ratio_curve",
    "parse_fraction",
    "scm_device_json",
    "simulate_cache",
    "simulate_hierarchy",
    "trace_footprint",
    "__version__",
]
