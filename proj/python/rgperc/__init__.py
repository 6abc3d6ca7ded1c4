"""Bond and site percolation on configuration-model random graphs."""

from ._core import (
    BracketError,
    DivergentMoment,
    Error,
    GenerationFailed,
    InvalidArgument,
    NoTransition,
    critical_probability,
    estimate_threshold,
    gamma0,
    generate,
    generating_derivatives,
    lambda_bond,
    lambda_site,
    percolate,
    powerlaw_threshold,
    q_prime,
    run_cli,
    sweep,
    validate,
)

__all__ = [
    "BracketError",
    "DivergentMoment",
    "Error",
    "GenerationFailed",
    "InvalidArgument",
    "NoTransition",
    "critical_probability",
    "estimate_threshold",
    "gamma0",
    "generate",
    "generating_derivatives",
    "lambda_bond",
    "lambda_site",
    "percolate",
    "powerlaw_threshold",
    "q_prime",
    "run_cli",
    "sweep",
    "validate",
]
