"""
Desk-scale data for the six reference figures.

Each figure is one long-format table. Parameter grids that the figures leave unstated are
fixed here and written into the table header as ``grid_*`` notes.
"""
from dataclasses import dataclass, field
import math
from typing import Any, Callable, Dict, List, Optional, Type

import numpy as np
from pydantic import BaseModel

from onebit.asymptotics.regimes import (
    high_snr_capacity,
    large_alpha_capacity,
    low_snr_capacity,
    small_alpha_capacity,
)
from onebit.common.errors import OneBitError
from onebit.common.logger import logger
from onebit.finite.exact import FiniteSystem, exact_capacity
from onebit.replica.capacity import capacity
from onebit.replica.saddle import SolverOptions, SystemPoint
from onebit.schemas.results import (
    CapacityRow,
    ContourRow,
    FiniteComparisonRow,
    SeriesRow,
    TradeoffRow,
    rho_from_db,
    snr_db,
)
from onebit.schemas.run_config import FigureParams
from onebit.sweep.contour import contour, e_for_capacity, snr_for_contour_approx
from onebit.sweep.grid import sweep

FIG1_ALPHAS = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75)
FIG1_SNR_DB = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)
FIG3_LEVELS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
FIG3_ALPHA_RANGE = (0.1, 4.0)
FIG3_STEPS = 40
FIG4_HIGH_RHOS = (10.0, 100.0, 1000.0)
FIG4_LOW_RHO = 0.1
FIG4_ALPHA_STEP = 0.05
FIG4_ALPHA_MAX = 4.0
FIG5_LARGE_ALPHA = 5.0
FIG5_SMALL_ALPHA = 1.0
FIG5_SNR_DB = tuple(float(db) for db in range(-20, 22, 2))
FIG6_LEVELS = (0.6, 0.7, 0.8, 0.9)
FIG6_ALPHA_RANGE = (5.0, 10.0)
FIG6_STEPS = 11


@dataclass
class FigureTable:
    rows: List[BaseModel]
    row_type: Type[BaseModel]
    notes: Dict[str, Any] = field(default_factory=dict)


def _replica_value(point: SystemPoint, options: SolverOptions) -> Optional[float]:
    try:
        return capacity(point, options).c_avg
    except OneBitError as exc:
        logger.warning(f"replica capacity failed at {point}: {exc}")
        return None


def figure1(params: FigureParams, options: SolverOptions, workers: Optional[int]) -> FigureTable:
    """Finite-size capacity at M = m against the large-system value."""
    rows: List[BaseModel] = []
    for alpha in FIG1_ALPHAS:
        n = max(1, int(round(alpha * params.m)))
        for db in FIG1_SNR_DB:
            rho = rho_from_db(db)
            replica = _replica_value(SystemPoint(rho=rho, alpha=n / params.m), options)
            try:
                estimate = exact_capacity(
                    FiniteSystem(m=params.m, n=n, rho=rho),
                    params.channels,
                    params.seed,
                    workers=workers,
                    rule=options.rule,
                )
            except OneBitError as exc:
                rows.append(
                    FiniteComparisonRow(
                        m=params.m, n=n, alpha=n / params.m, snr_db=db, snr_linear=rho,
                        c_avg=replica, error=str(exc),
                    )
                )
                continue
            rows.append(
                FiniteComparisonRow(
                    m=params.m,
                    n=n,
                    alpha=n / params.m,
                    snr_db=db,
                    snr_linear=rho,
                    mean=estimate.mean,
                    std_err=estimate.std_err,
                    c_avg=replica,
                    abs_diff=None if replica is None else abs(estimate.mean - replica),
                )
            )
    notes = {
        "grid_alpha": FIG1_ALPHAS,
        "grid_snr_db": FIG1_SNR_DB,
        "channels": params.channels,
        "m": params.m,
        "seed": params.seed,
    }
    return FigureTable(rows, FiniteComparisonRow, notes)


def figure2_grid(step: float) -> np.ndarray:
    """0.1 … 10 with spacing ``step`` (100 points at the default 0.1)."""
    count = int(round((10.0 - 0.1) / step)) + 1
    return np.linspace(0.1, 10.0, max(count, 2))


def figure2(params: FigureParams, options: SolverOptions, workers: Optional[int]) -> FigureTable:
    """Capacity over 0.1 ≤ ρ, α ≤ 10."""
    grid = [float(v) for v in figure2_grid(params.step)]
    cells = sweep(grid, grid, options, workers)
    rows = [CapacityRow.from_cell(c) for c in cells]
    return FigureTable(rows, CapacityRow, {"grid_step": params.step})


def figure3(params: FigureParams, options: SolverOptions, workers: Optional[int]) -> FigureTable:
    """Constant-capacity contours for α ≤ 4."""
    rows: List[BaseModel] = []
    for level in FIG3_LEVELS:
        points = contour(level, FIG3_ALPHA_RANGE, FIG3_STEPS, options, workers, with_approx=False)
        rows.extend(ContourRow.from_point(p) for p in points)
    notes = {
        "grid_levels": FIG3_LEVELS,
        "grid_alpha_range": FIG3_ALPHA_RANGE,
        "grid_steps": FIG3_STEPS,
    }
    return FigureTable(rows, ContourRow, notes)


def _alpha_axis(step: float, stop: float) -> List[float]:
    count = int(round(stop / step))
    return [round(step * (i + 1), 12) for i in range(count)]


def _series(
    name: str, rho: float, alpha: float, value: Callable[[], float]
) -> SeriesRow:
    common: Dict[str, Any] = dict(series=name, snr_linear=rho, snr_db=snr_db(rho), alpha=alpha)
    try:
        return SeriesRow(**common, c_avg=value())
    except OneBitError as exc:
        return SeriesRow(**common, error=str(exc))


def figure4(params: FigureParams, options: SolverOptions, workers: Optional[int]) -> FigureTable:
    """High- and low-SNR capacity against their approximations, as functions of α."""
    alphas = _alpha_axis(FIG4_ALPHA_STEP, FIG4_ALPHA_MAX)
    rows: List[BaseModel] = []
    for rho in FIG4_HIGH_RHOS + (FIG4_LOW_RHO,):
        cells = sweep([rho], alphas, options, workers)
        rows.extend(
            SeriesRow(
                series="replica",
                snr_linear=c.rho,
                snr_db=snr_db(c.rho),
                alpha=c.alpha,
                c_avg=c.result.c_avg if c.result else None,
                error=c.error,
            )
            for c in cells
        )
    for alpha in alphas:
        rows.append(
            _series("high_snr", math.inf, alpha, lambda: high_snr_capacity(alpha, options).c_avg)
        )
    for alpha in alphas:
        point = SystemPoint(rho=FIG4_LOW_RHO, alpha=alpha)
        rows.append(_series("low_snr", FIG4_LOW_RHO, alpha, lambda: low_snr_capacity(point).c_avg))
    notes = {
        "grid_alpha_step": FIG4_ALPHA_STEP,
        "grid_alpha_max": FIG4_ALPHA_MAX,
        "grid_rho": FIG4_HIGH_RHOS,
    }
    return FigureTable(rows, SeriesRow, notes)


def figure5(params: FigureParams, options: SolverOptions, workers: Optional[int]) -> FigureTable:
    """Large-α (α = 5) and small-α (α = 1) approximations across SNR."""
    rhos = [rho_from_db(db) for db in FIG5_SNR_DB]
    approximations = (
        (FIG5_LARGE_ALPHA, "large_alpha", large_alpha_capacity),
        (FIG5_SMALL_ALPHA, "small_alpha", small_alpha_capacity),
    )
    rows: List[BaseModel] = []
    for alpha, name, approximate in approximations:
        for cell in sweep(rhos, [alpha], options, workers):
            rows.append(
                SeriesRow(
                    series="replica",
                    snr_linear=cell.rho,
                    snr_db=snr_db(cell.rho),
                    alpha=alpha,
                    c_avg=cell.result.c_avg if cell.result else None,
                    error=cell.error,
                )
            )
        for rho in rhos:
            point = SystemPoint(rho=rho, alpha=alpha)
            rows.append(_series(name, rho, alpha, lambda: approximate(point, options.rule).c_avg))
    notes = {"grid_alpha": (FIG5_LARGE_ALPHA, FIG5_SMALL_ALPHA), "grid_snr_db": FIG5_SNR_DB}
    return FigureTable(rows, SeriesRow, notes)


def figure6(params: FigureParams, options: SolverOptions, workers: Optional[int]) -> FigureTable:
    """Contour SNR from the full solver against the quadratic closed form, α ∈ [5, 10]."""
    rows: List[BaseModel] = []
    for level in FIG6_LEVELS:
        e_c = e_for_capacity(level, options.rule)
        points = contour(level, FIG6_ALPHA_RANGE, FIG6_STEPS, options, workers, with_approx=False)
        for point in points:
            try:
                approx = snr_for_contour_approx(point.alpha, e_c)
            except OneBitError:
                approx = None
            rel = None
            if point.rho is not None and approx is not None:
                rel = abs(approx - point.rho) / point.rho
            rows.append(
                TradeoffRow(
                    c_target=level,
                    e_c=e_c,
                    alpha=point.alpha,
                    snr_linear=point.rho,
                    snr_linear_approx=approx,
                    rel_diff=rel,
                    error=point.error,
                )
            )
    notes = {
        "grid_levels": FIG6_LEVELS,
        "grid_alpha_range": FIG6_ALPHA_RANGE,
        "grid_steps": FIG6_STEPS,
    }
    return FigureTable(rows, TradeoffRow, notes)


FIGURES: Dict[str, Callable[[FigureParams, SolverOptions, Optional[int]], FigureTable]] = {
    "fig1": figure1,
    "fig2": figure2,
    "fig3": figure3,
    "fig4": figure4,
    "fig5": figure5,
    "fig6": figure6,
}


def reproduce_figure(
    params: FigureParams,
    options: Optional[SolverOptions] = None,
    workers: Optional[int] = None,
) -> FigureTable:
    """Run the parameter grid of ``params.figure`` and return its table."""
    logger.info(f"reproducing {params.figure}")
    table = FIGURES[params.figure](params, options or SolverOptions.from_settings(), workers)
    table.notes["figure"] = params.figure
    return table
