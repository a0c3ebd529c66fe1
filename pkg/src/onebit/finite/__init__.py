"""Finite-size capacity by enumeration or output sampling over random channels"""

from .channel import RNG_ALGORITHM, realify, sample_channel, sample_complex_channel, sign_patterns
from .exact import (
    Conditional,
    ExactCapacityEstimate,
    FiniteSystem,
    Method,
    complex_exact_capacity,
    cond_entropy_given_input,
    conditional_entropy_for_channel,
    exact_capacity,
    mutual_information_direct,
    output_distribution,
    output_entropy,
    sampled_output_entropy,
    select_method,
)

__all__ = [
    "RNG_ALGORITHM",
    "Conditional",
    "ExactCapacityEstimate",
    "FiniteSystem",
    "Method",
    "complex_exact_capacity",
    "cond_entropy_given_input",
    "conditional_entropy_for_channel",
    "exact_capacity",
    "mutual_information_direct",
    "output_distribution",
    "output_entropy",
    "realify",
    "sample_channel",
    "sample_complex_channel",
    "sampled_output_entropy",
    "select_method",
    "sign_patterns",
]
