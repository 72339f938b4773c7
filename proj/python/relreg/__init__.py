"""Asymptotically optimal planning over cost maps with relevant-region sampling."""

from ._relreg import (
    ConfigError,
    DomainError,
    Environment,
    PlanResult,
    PlannerConfig,
    StepLimitInputs,
    build_environment,
    edge_cost,
    l2_heuristic,
    load_config,
    parse_config,
    plan,
    run_benchmark,
    step_limit_general,
    step_limit_uniform,
    worlds,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Environment",
    "PlanResult",
    "PlannerConfig",
    "StepLimitInputs",
    "build_environment",
    "edge_cost",
    "l2_heuristic",
    "load_config",
    "parse_config",
    "plan",
    "run_benchmark",
    "step_limit_general",
    "step_limit_uniform",
    "worlds",
]
