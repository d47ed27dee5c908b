"""Samplers, decompositions and local-limit statistics for sparse planar graphs."""

from ._locallim import (
    BudgetError,
    ConfigError,
    ContractViolation,
    EmptyClassError,
    __version__,
    ball_code_hex,
    borel_pmf,
    cli,
    gw_ball_reference,
    gw_plane_prob,
    is_planar,
    plane_census,
    predicted_limit,
    run_suite,
    sample,
    structure_stats,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "ContractViolation",
    "EmptyClassError",
    "__version__",
    "ball_code_hex",
    "borel_pmf",
    "cli",
    "gw_ball_reference",
    "gw_plane_prob",
    "is_planar",
    "plane_census",
    "predicted_limit",
    "run_suite",
    "sample",
    "structure_stats",
]
