"""Grid sweeps, constant-capacity contours and the large-α tradeoff"""

from .contour import (
    QUADRATIC_COEFFICIENTS,
    ContourPoint,
    QuadraticFit,
    contour,
    e_for_capacity,
    fit_quadratic_coefficients,
    large_alpha_e,
    min_cost_point,
    quadratic_e,
    snr_for_contour_approx,
    solve_contour_rho,
)
from .grid import SweepCell, grid_points, sweep

__all__ = [
    "QUADRATIC_COEFFICIENTS",
    "ContourPoint",
    "QuadraticFit",
    "SweepCell",
    "contour",
    "e_for_capacity",
    "fit_quadratic_coefficients",
    "grid_points",
    "large_alpha_e",
    "min_cost_point",
    "quadratic_e",
    "snr_for_contour_approx",
    "solve_contour_rho",
    "sweep",
]
