"""Hybrid DRAM/NVM page-placement simulator."""

from ._core import (
    Config,
    ConfigError,
    Error,
    EventCounters,
    MemoryAccess,
    Op,
    SyntheticSpec,
    TraceParseError,
    compute_amat,
    compute_appr_dynamic,
    derive_capacities,
    generate_synthetic,
    nvm_write_breakdown,
    parse_trace_line,
    run_plan,
    simulate,
)

POLICIES = ("dram_lru", "nvm_lru", "clock_dwf", "two_lru")

__all__ = [
    "POLICIES",
    "Config",
    "ConfigError",
    "Error",
    "EventCounters",
    "MemoryAccess",
    "Op",
    "SyntheticSpec",
    "TraceParseError",
    "compute_amat",
    "compute_appr_dynamic",
    "derive_capacities",
    "generate_synthetic",
    "nvm_write_breakdown",
    "parse_trace_line",
    "run_plan",
    "simulate",
]
