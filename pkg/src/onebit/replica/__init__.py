"""Replica-symmetric large-system capacity"""

from .capacity import CapacityResult, capacity, capacity_complex
from .functional import (
    binary_input_information,
    log_cosh_expectation,
    rs_expression,
    single_transceiver_capacity,
    softplus_expectation,
)
from .saddle import (
    SaddleSolution,
    SolverOptions,
    SystemPoint,
    a_of_q,
    e_update,
    initial_guess,
    iterate_fixed_point,
    q_update,
    scaled_inv_q_integral,
    solve_saddle,
)

__all__ = [
    "CapacityResult",
    "SaddleSolution",
    "SolverOptions",
    "SystemPoint",
    "a_of_q",
    "binary_input_information",
    "capacity",
    "capacity_complex",
    "e_update",
    "initial_guess",
    "iterate_fixed_point",
    "log_cosh_expectation",
    "q_update",
    "rs_expression",
    "scaled_inv_q_integral",
    "single_transceiver_capacity",
    "softplus_expectation",
    "solve_saddle",
]
