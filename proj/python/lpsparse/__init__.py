"""Sparse estimation for overdetermined noisy linear systems.

Supports are 0-based index lists. The three-step estimator is exposed as
:func:`estimate`; baselines, generators and Monte Carlo drivers sit alongside.
"""

from ._core import (
    ConvergenceError,
    DomainError,
    Error,
    NumericalError,
    ParseError,
    RankDeficientError,
    adalasso,
    check_gram_bounds,
    compute_lambda,
    detect_support,
    estimate,
    generate,
    lasso,
    oracle_lse,
    read_problem_bundle,
    run_mse_experiment,
    run_support_recovery,
    sinusoid_matrix,
    soft_threshold,
    solution_path,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "Error",
    "NumericalError",
    "ParseError",
    "RankDeficientError",
    "adalasso",
    "check_gram_bounds",
    "compute_lambda",
    "detect_support",
    "estimate",
    "generate",
    "lasso",
    "oracle_lse",
    "read_problem_bundle",
    "run_mse_experiment",
    "run_support_recovery",
    "sinusoid_matrix",
    "soft_threshold",
    "solution_path",
]
