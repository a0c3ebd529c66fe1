"""Closed-form and reduced approximations of the capacity in limiting regimes"""

from .regimes import (
    Regime,
    RegimeApprox,
    high_snr_capacity,
    high_snr_e,
    high_snr_unclipped,
    large_alpha_capacity,
    large_alpha_e,
    low_snr_capacity,
    low_snr_saddle,
    saturation_alpha,
    small_alpha_capacity,
    small_alpha_saddle,
    solve_high_snr_saddle,
)

__all__ = [
    "Regime",
    "RegimeApprox",
    "high_snr_capacity",
    "high_snr_e",
    "high_snr_unclipped",
    "large_alpha_capacity",
    "large_alpha_e",
    "low_snr_capacity",
    "low_snr_saddle",
    "saturation_alpha",
    "small_alpha_capacity",
    "small_alpha_saddle",
    "solve_high_snr_saddle",
]
