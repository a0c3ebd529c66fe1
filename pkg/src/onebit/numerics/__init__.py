"""Special functions and standard-normal quadrature"""

from .special import (
    binary_entropy,
    binary_entropy_of_q,
    inv_q_weighted,
    log2_cosh,
    log_inv_q_weighted,
    log_q_function,
    q_function,
    q_function_scaled,
)
from .quadrature import (
    AdaptiveRule,
    ExpectationRule,
    QuadratureRule,
    adaptive_integral,
    default_rule,
    gauss_expect,
    gauss_hermite_rule,
    resolve_rule,
)

__all__ = [
    "binary_entropy",
    "binary_entropy_of_q",
    "inv_q_weighted",
    "log2_cosh",
    "log_inv_q_weighted",
    "log_q_function",
    "q_function",
    "q_function_scaled",
    "AdaptiveRule",
    "ExpectationRule",
    "QuadratureRule",
    "adaptive_integral",
    "default_rule",
    "gauss_expect",
    "gauss_hermite_rule",
    "resolve_rule",
]
