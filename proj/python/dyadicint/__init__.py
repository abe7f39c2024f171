"""Definite integrals as truncated series over dyadic rationals."""

from ._core import (
    ConfigurationError,
    DepthExhausted,
    DomainError,
    Error,
    EvaluationError,
    Expression,
    ParseError,
    QuadratureResult,
    RangeError,
    adaptive_quad,
    advance,
    agm_complete_elliptic,
    digit,
    elliptic_f,
    error_bound,
    integrate,
    integrate_2d,
    level_sum,
    li,
    parse,
    pendulum_period,
    periodic_residual,
    reconstruct,
    unit_exponential_expansion,
    unit_exponential_terms,
)

__all__ = [
    "ConfigurationError",
    "DepthExhausted",
    "DomainError",
    "Error",
    "EvaluationError",
    "Expression",
    "ParseError",
    "QuadratureResult",
    "RangeError",
    "adaptive_quad",
    "advance",
    "agm_complete_elliptic",
    "digit",
    "elliptic_f",
    "error_bound",
    "integrate",
    "integrate_2d",
    "level_sum",
    "li",
    "parse",
    "pendulum_period",
    "periodic_residual",
    "reconstruct",
    "unit_exponential_expansion",
    "unit_exponential_terms",
]
