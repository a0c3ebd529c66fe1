"""
Limiting-regime approximations of the per-transmitter capacity.

- High SNR: A² = 1/(1−q); the saddle point reduces to Gibbs learning of the Ising perceptron.
- Low SNR: second-order expansion in ρ.
- Large α: q → 1, A → √ρ with E growing linearly in α.
- Small α: first-order expansion in α.

Validity ranges are reported alongside each value and never enforced.
"""
from dataclasses import dataclass
from enum import Enum
import math
from typing import Optional

from scipy import optimize

from onebit.common.errors import BracketError, DomainError
from onebit.common.logger import logger
from onebit.numerics.quadrature import ExpectationRule, resolve_rule
from onebit.numerics.special import LN2
from onebit.replica.functional import (
    binary_input_information,
    single_transceiver_capacity,
    softplus_expectation,
)
from onebit.replica.saddle import (
    SaddleSolution,
    SolverOptions,
    SystemPoint,
    iterate_fixed_point,
    scaled_inv_q_integral,
)


class Regime(str, Enum):
    """Asymptotic regime of an approximation"""

    HIGH_SNR = "high_snr"
    LOW_SNR = "low_snr"
    LARGE_ALPHA = "large_alpha"
    SMALL_ALPHA = "small_alpha"


@dataclass
class RegimeApprox:
    """Approximate capacity with its regime and validity hint"""

    regime: Regime
    c_avg: float
    validity_hint: str
    within_validity: Optional[bool] = None
    unclipped: Optional[float] = None


# Bounds under which each approximation stays within a few percent of the full solver
LOW_SNR_ALPHA_RHO_LIMIT = 0.4
LARGE_ALPHA_MIN = 5.0
SMALL_ALPHA_MAX = 1.0

SATURATION_BRACKET = (1.0, 1.5)


# ---------------------------------------------------------------------------------------------
# High SNR
# ---------------------------------------------------------------------------------------------


def high_snr_e(alpha: float, q: float, rule: Optional[ExpectationRule] = None) -> float:
    """E = α/(π√(2π(1−q))) ∫ exp(−(1+q)z²/2)/Q(√q z) dz."""
    if not 0.0 <= q < 1.0:
        raise DomainError(f"overlap q must lie in [0, 1), got {q}")
    A2 = 1.0 / (1.0 - q)
    prefactor = alpha * A2 / (math.pi * math.sqrt(2.0 * math.pi))
    return prefactor * scaled_inv_q_integral(math.sqrt(A2 * q), rule)


def solve_high_snr_saddle(alpha: float, options: Optional[SolverOptions] = None) -> SaddleSolution:
    """Noise-free saddle point; ``saturated`` when only the boundary q = 1 remains."""
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be finite and > 0, got {alpha}")
    opts = options or SolverOptions.from_settings()
    rule = resolve_rule(opts.rule)

    def e_of_q(q: float) -> float:
        return high_snr_e(alpha, q, rule)

    q0 = min(0.9, 2.0 * alpha / math.pi)
    fixed = iterate_fixed_point(e_of_q, q0, opts, rule)
    if fixed.saturated:
        logger.debug(f"high-SNR start q0={q0:.4g} saturated at alpha={alpha}; confirming from q0=0")
        fixed = iterate_fixed_point(e_of_q, 0.0, opts, rule)

    A = math.inf if fixed.saturated else 1.0 / math.sqrt(1.0 - fixed.q)
    return SaddleSolution(
        q=fixed.q,
        E=fixed.E,
        A=A,
        residual=fixed.residual,
        iterations=fixed.iterations,
        saturated=fixed.saturated,
        start=fixed.start,
    )


def high_snr_unclipped(alpha: float, options: Optional[SolverOptions] = None) -> Optional[float]:
    """
    α(1 − c(q/(1−q))) + (E+Eq)/(2 ln2) − E_z[log2 cosh(E+√E z)] at the interior solution.

    Returns None when no interior solution exists (the boundary q = 1 governs).
    """
    opts = options or SolverOptions.from_settings()
    rule = resolve_rule(opts.rule)
    saddle = solve_high_snr_saddle(alpha, opts)
    if saddle.saturated:
        return None
    q, E = saddle.q, saddle.E
    channel_term = 1.0 - single_transceiver_capacity(q / (1.0 - q), rule)
    penalty = E * (1.0 - q) / (2.0 * LN2) + softplus_expectation(E, rule) / LN2
    return alpha * channel_term + 1.0 - penalty


def high_snr_capacity(alpha: float, options: Optional[SolverOptions] = None) -> RegimeApprox:
    """Noise-free capacity; 1 once α exceeds the saturation threshold."""
    value = high_snr_unclipped(alpha, options)
    hint = "rho -> inf"
    if value is None:
        return RegimeApprox(Regime.HIGH_SNR, 1.0, hint, None, None)
    return RegimeApprox(Regime.HIGH_SNR, max(min(value, 1.0), 0.0), hint, None, value)


def saturation_alpha(
    options: Optional[SolverOptions] = None,
    bracket: tuple = SATURATION_BRACKET,
    xtol: float = 1e-6,
) -> float:
    """α* where the noise-free capacity first reaches one bit (≈ 1.24)."""

    def excess(alpha: float) -> float:
        value = high_snr_unclipped(alpha, options)
        return 1.0 if value is None else value - 1.0

    lo, hi = bracket
    f_lo, f_hi = excess(lo), excess(hi)
    if f_lo * f_hi > 0:
        raise BracketError(
            f"saturation threshold not bracketed by alpha in [{lo}, {hi}] "
            f"(excess {f_lo:.4g}, {f_hi:.4g})"
        )
    root = optimize.brentq(excess, lo, hi, xtol=xtol)
    logger.debug(f"saturation threshold alpha*={root:.6f}")
    return float(root)


# ---------------------------------------------------------------------------------------------
# Low SNR
# ---------------------------------------------------------------------------------------------


def low_snr_capacity(point: SystemPoint) -> RegimeApprox:
    """αρ/(π ln2) − (α² + (π−1)α)ρ²/(π² ln2)."""
    rho, alpha = point.rho, point.alpha
    linear = alpha * rho / (math.pi * LN2)
    value = linear - (alpha**2 + (math.pi - 1.0) * alpha) * rho**2 / (math.pi**2 * LN2)
    return RegimeApprox(
        Regime.LOW_SNR,
        value,
        f"alpha <= {LOW_SNR_ALPHA_RHO_LIMIT}/rho",
        within_validity=rho == 0.0 or alpha <= LOW_SNR_ALPHA_RHO_LIMIT / rho,
    )


def low_snr_saddle(point: SystemPoint) -> SaddleSolution:
    """q ≈ E ≈ 2αρ/π, A ≈ √ρ."""
    value = 2.0 * point.alpha * point.rho / math.pi
    return SaddleSolution(
        q=min(value, 1.0),
        E=value,
        A=math.sqrt(point.rho),
        residual=math.nan,
        iterations=0,
        saturated=False,
    )


# ---------------------------------------------------------------------------------------------
# Large α
# ---------------------------------------------------------------------------------------------


def large_alpha_e(rho: float, alpha: float = 1.0, rule: Optional[ExpectationRule] = None) -> float:
    """E = αρ/(π√(2π)) ∫ exp(−(ρ+½)z²)/Q(√ρ z) dz; linear in α."""
    if not (rho >= 0 and math.isfinite(rho)):
        raise DomainError(f"rho must be finite and >= 0, got {rho}")
    if rho == 0.0:
        return 0.0
    prefactor = alpha * rho / (math.pi * math.sqrt(2.0 * math.pi))
    return prefactor * scaled_inv_q_integral(math.sqrt(rho), rule)


def large_alpha_capacity(
    point: SystemPoint, rule: Optional[ExpectationRule] = None
) -> RegimeApprox:
    """min(1, E/ln2 − E_z[log2 cosh(E+√E z)]) with E from the q → 1 limit."""
    if point.rho <= 0.0:
        raise DomainError("large_alpha_capacity requires rho > 0")
    rule = resolve_rule(rule)
    value = binary_input_information(large_alpha_e(point.rho, point.alpha, rule), rule)
    return RegimeApprox(
        Regime.LARGE_ALPHA,
        max(min(value, 1.0), 0.0),
        f"alpha >= {LARGE_ALPHA_MIN:g}",
        within_validity=point.alpha >= LARGE_ALPHA_MIN,
        unclipped=value,
    )


# ---------------------------------------------------------------------------------------------
# Small α
# ---------------------------------------------------------------------------------------------


def small_alpha_capacity(
    point: SystemPoint, rule: Optional[ExpectationRule] = None
) -> RegimeApprox:
    """c(ρ)α − ρ²α²/(π²(1+ρ)² ln2)."""
    rho, alpha = point.rho, point.alpha
    value = single_transceiver_capacity(rho, rule) * alpha - rho**2 * alpha**2 / (
        math.pi**2 * (1.0 + rho) ** 2 * LN2
    )
    return RegimeApprox(
        Regime.SMALL_ALPHA,
        value,
        f"alpha <= {SMALL_ALPHA_MAX:g}",
        within_validity=alpha <= SMALL_ALPHA_MAX,
    )


def small_alpha_saddle(point: SystemPoint) -> SaddleSolution:
    """q ≈ E ≈ 2ρα/((1+ρ)π), A ≈ √(ρ/(1+ρ))."""
    value = 2.0 * point.rho * point.alpha / ((1.0 + point.rho) * math.pi)
    return SaddleSolution(
        q=min(value, 1.0),
        E=value,
        A=math.sqrt(point.rho / (1.0 + point.rho)),
        residual=math.nan,
        iterations=0,
        saturated=False,
    )
