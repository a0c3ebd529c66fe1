"""Large-system per-transmitter capacity from the replica-symmetric saddle point"""

from dataclasses import dataclass
import math
from typing import Optional

from onebit.common.errors import QuadratureError
from onebit.common.logger import logger

from .functional import rs_expression
from .saddle import SaddleSolution, SolverOptions, SystemPoint, solve_saddle


@dataclass
class CapacityResult:
    """
    Per-transmitter capacity in bits per channel use (real signaling).

    ``clipped`` is True when the min(·, 1) was active, including every saturated saddle point.
    ``unclipped`` is the raw replica expression, or 1.0 on the boundary.
    """

    point: SystemPoint
    c_avg: float
    saddle: SaddleSolution
    clipped: bool
    unclipped: float


def capacity(point: SystemPoint, options: Optional[SolverOptions] = None) -> CapacityResult:
    """
    Replica-symmetric capacity per transmitter.

    min(α(c(ρ) − c(A²q)) + (E+Eq)/(2 ln2) − E_z[log2 cosh(E+√E z)], 1),
    or 1 when the saddle point sits on the boundary q = 1.
    """
    opts = options or SolverOptions.from_settings()

    if point.rho == 0.0:
        saddle = SaddleSolution(q=0.0, E=0.0, A=0.0, residual=0.0, iterations=0, saturated=False)
        return CapacityResult(point=point, c_avg=0.0, saddle=saddle, clipped=False, unclipped=0.0)

    saddle = solve_saddle(point, opts)
    if saddle.saturated:
        return CapacityResult(point=point, c_avg=1.0, saddle=saddle, clipped=True, unclipped=1.0)

    value = rs_expression(point.alpha, point.rho, saddle.q, saddle.E, saddle.A, opts.rule)
    if not math.isfinite(value):
        raise QuadratureError(f"non-finite capacity expression {value} at {point}")
    c_avg = max(min(value, 1.0), 0.0)
    logger.debug(f"capacity at {point}: {c_avg:.6g} (q={saddle.q:.6g}, E={saddle.E:.6g})")
    return CapacityResult(
        point=point, c_avg=c_avg, saddle=saddle, clipped=value > 1.0, unclipped=value
    )


def capacity_complex(point: SystemPoint, options: Optional[SolverOptions] = None) -> float:
    """I-Q channel capacity per complex transmitter: exactly twice the I-only value."""
    return 2.0 * capacity(point, options).c_avg
