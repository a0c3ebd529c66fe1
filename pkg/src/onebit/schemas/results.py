"""Output row schemas; field order is the emitted column order"""

import math
from typing import Dict, Optional

from pydantic import BaseModel

from onebit.asymptotics.regimes import RegimeApprox
from onebit.finite.exact import ExactCapacityEstimate
from onebit.replica.capacity import CapacityResult
from onebit.replica.saddle import SaddleSolution, SystemPoint
from onebit.sweep.contour import ContourPoint, QUADRATIC_COEFFICIENTS, QuadraticFit
from onebit.sweep.grid import SweepCell

BITS = "bits_per_transmitter"
SNR_LINEAR = "snr_linear"

# Units of every column that carries a physical quantity
COLUMN_UNITS: Dict[str, str] = {
    "snr_linear": SNR_LINEAR,
    "snr_linear_approx": SNR_LINEAR,
    "snr_db": "dB",
    "c_avg": BITS,
    "c_complex": "bits_per_complex_transmitter",
    "c_target": BITS,
    "c_full": BITS,
    "unclipped": BITS,
    "mean": BITS,
    "std_err": BITS,
    "replica": BITS,
}


def snr_db(rho: Optional[float]) -> Optional[float]:
    """10·log10(ρ); None at ρ = 0."""
    if rho is None or rho <= 0.0:
        return None
    return 10.0 * math.log10(rho)


def rho_from_db(db: float) -> float:
    return 10.0 ** (db / 10.0)


class CapacityRow(BaseModel):
    snr_linear: float
    snr_db: Optional[float] = None
    alpha: float
    c_avg: Optional[float] = None
    q: Optional[float] = None
    E: Optional[float] = None
    A: Optional[float] = None
    saturated: Optional[bool] = None
    clipped: Optional[bool] = None
    ambiguous: Optional[bool] = None
    residual: Optional[float] = None
    iterations: Optional[int] = None
    c_complex: Optional[float] = None
    error: Optional[str] = None

    @classmethod
    def from_result(
        cls, result: CapacityResult, c_complex: Optional[float] = None
    ) -> "CapacityRow":
        saddle = result.saddle
        return cls(
            snr_linear=result.point.rho,
            snr_db=snr_db(result.point.rho),
            alpha=result.point.alpha,
            c_avg=result.c_avg,
            q=saddle.q,
            E=saddle.E,
            A=saddle.A,
            saturated=saddle.saturated,
            clipped=result.clipped,
            ambiguous=saddle.ambiguous,
            residual=saddle.residual,
            iterations=saddle.iterations,
            c_complex=c_complex,
        )

    @classmethod
    def from_cell(cls, cell: SweepCell) -> "CapacityRow":
        if cell.result is not None:
            return cls.from_result(cell.result)
        return cls(snr_linear=cell.rho, snr_db=snr_db(cell.rho), alpha=cell.alpha, error=cell.error)


class SaddleRow(BaseModel):
    snr_linear: float
    snr_db: Optional[float] = None
    alpha: float
    q: float
    E: float
    A: float
    residual: float
    iterations: int
    saturated: bool
    ambiguous: bool
    start: float

    @classmethod
    def from_solution(cls, point: SystemPoint, saddle: SaddleSolution) -> "SaddleRow":
        return cls(
            snr_linear=point.rho,
            snr_db=snr_db(point.rho),
            alpha=point.alpha,
            q=saddle.q,
            E=saddle.E,
            A=saddle.A,
            residual=saddle.residual,
            iterations=saddle.iterations,
            saturated=saddle.saturated,
            ambiguous=saddle.ambiguous,
            start=saddle.start,
        )


class ContourRow(BaseModel):
    c_target: float
    alpha: float
    snr_linear: Optional[float] = None
    snr_db: Optional[float] = None
    c_avg: Optional[float] = None
    snr_linear_approx: Optional[float] = None
    error: Optional[str] = None

    @classmethod
    def from_point(cls, point: ContourPoint) -> "ContourRow":
        return cls(
            c_target=point.c_target,
            alpha=point.alpha,
            snr_linear=point.rho,
            snr_db=snr_db(point.rho),
            c_avg=point.c_avg,
            snr_linear_approx=point.rho_approx,
            error=point.error,
        )


class ExactRow(BaseModel):
    m: int
    n: int
    alpha: float
    snr_linear: float
    snr_db: Optional[float] = None
    mean: float
    std_err: float
    num_channels: int
    seed: int
    method: str
    conditional: str
    complex_signals: bool
    rng_algorithm: str
    replica: Optional[float] = None

    @classmethod
    def from_estimate(
        cls, estimate: ExactCapacityEstimate, replica: Optional[float] = None
    ) -> "ExactRow":
        system = estimate.system
        return cls(
            m=system.m,
            n=system.n,
            alpha=system.alpha,
            snr_linear=system.rho,
            snr_db=snr_db(system.rho),
            mean=estimate.mean,
            std_err=estimate.std_err,
            num_channels=estimate.num_channels,
            seed=estimate.seed,
            method=estimate.method.value,
            conditional=estimate.conditional.value,
            complex_signals=estimate.complex_signals,
            rng_algorithm=estimate.rng_algorithm,
            replica=replica,
        )


class ApproxRow(BaseModel):
    regime: str
    snr_linear: Optional[float] = None
    snr_db: Optional[float] = None
    alpha: float
    c_avg: Optional[float] = None
    unclipped: Optional[float] = None
    validity_hint: Optional[str] = None
    within_validity: Optional[bool] = None
    c_full: Optional[float] = None
    error: Optional[str] = None

    @classmethod
    def from_approx(
        cls,
        approx: RegimeApprox,
        rho: Optional[float],
        alpha: float,
        c_full: Optional[float] = None,
    ) -> "ApproxRow":
        return cls(
            regime=approx.regime.value,
            snr_linear=rho,
            snr_db=snr_db(rho),
            alpha=alpha,
            c_avg=approx.c_avg,
            unclipped=approx.unclipped,
            validity_hint=approx.validity_hint,
            within_validity=approx.within_validity,
            c_full=c_full,
        )


class ThresholdRow(BaseModel):
    alpha_star: float
    lo: float
    hi: float


class FitRow(BaseModel):
    a: float
    b: float
    a_printed: float = QUADRATIC_COEFFICIENTS[0]
    b_printed: float = QUADRATIC_COEFFICIENTS[1]
    rho_max: float
    points: int
    max_rel_error_fit: float
    max_rel_error_printed: float

    @classmethod
    def from_fit(cls, fit: QuadraticFit) -> "FitRow":
        return cls(
            a=fit.a,
            b=fit.b,
            rho_max=fit.rho_max,
            points=fit.points,
            max_rel_error_fit=fit.max_rel_error_fit,
            max_rel_error_printed=fit.max_rel_error_printed,
        )


class FiniteComparisonRow(BaseModel):
    """Finite-size estimate against the large-system value at the same (ρ, α)"""

    m: int
    n: int
    alpha: float
    snr_db: Optional[float] = None
    snr_linear: float
    mean: Optional[float] = None
    std_err: Optional[float] = None
    c_avg: Optional[float] = None
    abs_diff: Optional[float] = None
    error: Optional[str] = None


class SeriesRow(BaseModel):
    """One curve sample of a regime comparison: ``series`` is the regime or 'replica'"""

    series: str
    snr_linear: float
    snr_db: Optional[float] = None
    alpha: float
    c_avg: Optional[float] = None
    error: Optional[str] = None


class TradeoffRow(BaseModel):
    c_target: float
    e_c: float
    alpha: float
    snr_linear: Optional[float] = None
    snr_linear_approx: Optional[float] = None
    rel_diff: Optional[float] = None
    error: Optional[str] = None
