"""Capacity over a (ρ, α) grid"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from onebit.common.errors import DomainError, OneBitError
from onebit.common.logger import logger
from onebit.common.parallel import parallel_map
from onebit.replica.capacity import CapacityResult, capacity
from onebit.replica.saddle import SolverOptions, SystemPoint


@dataclass
class SweepCell:
    """One grid cell; ``error`` is set instead of ``result`` when the solve failed."""

    rho: float
    alpha: float
    result: Optional[CapacityResult] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.result is not None


def _evaluate_cell(task: Tuple[SystemPoint, SolverOptions]) -> SweepCell:
    point, options = task
    try:
        return SweepCell(rho=point.rho, alpha=point.alpha, result=capacity(point, options))
    except OneBitError as exc:
        logger.warning(f"cell rho={point.rho:g} alpha={point.alpha:g} failed: {exc}")
        return SweepCell(rho=point.rho, alpha=point.alpha, error=f"{type(exc).__name__}: {exc}")


def grid_points(rho_grid: Sequence[float], alpha_grid: Sequence[float]) -> List[SystemPoint]:
    """Validated cross product, α outer and ρ inner."""
    if len(rho_grid) == 0 or len(alpha_grid) == 0:
        raise DomainError("sweep grids must be non-empty")
    try:
        return [SystemPoint(rho=rho, alpha=alpha) for alpha in alpha_grid for rho in rho_grid]
    except ValidationError as exc:
        raise DomainError(f"invalid grid value: {exc.errors()[0]['msg']}") from exc


def sweep(
    rho_grid: Sequence[float],
    alpha_grid: Sequence[float],
    options: Optional[SolverOptions] = None,
    workers: Optional[int] = None,
) -> List[SweepCell]:
    """Evaluate capacity at every (ρ, α); failed cells are recorded, not raised."""
    points = grid_points(rho_grid, alpha_grid)
    opts = options or SolverOptions.from_settings()
    logger.info(f"sweeping {len(alpha_grid)} alpha x {len(rho_grid)} rho cells")
    cells = parallel_map(_evaluate_cell, [(point, opts) for point in points], workers)
    failed = sum(not cell.ok for cell in cells)
    if failed:
        logger.warning(f"{failed} of {len(cells)} sweep cells failed")
    return cells
