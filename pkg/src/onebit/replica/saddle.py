"""
Replica-symmetric saddle point (q, E, A) of the one-bit channel.

The fixed point of

    q = E_z[tanh(√E z + E)]
    E = α A² / (π√(2π)) ∫ exp(−(A²q + ½) z²) / Q(A√q z) dz
    A = √(ρ / (1 + ρ(1 − q)))

is found by damped substitution on q. The map q ↦ q_update(e_update(q)) is increasing, so a
start below the smallest fixed point climbs to it monotonically; a run that reaches
q > 1 − saturation_eps is the boundary solution q = 1.
"""
from dataclasses import dataclass
import math
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import special

from onebit.common.config import settings
from onebit.common.errors import BoundarySaddleError, ConvergenceError, DomainError
from onebit.common.logger import logger
from onebit.numerics.quadrature import (
    AdaptiveRule,
    ExpectationRule,
    adaptive_integral,
    gauss_expect,
    resolve_rule,
)
from onebit.numerics.special import inv_q_weighted

from .functional import rs_expression


class SystemPoint(BaseModel):
    """An (ρ, α) operating point: linear SNR and receiver-to-transmitter ratio N/M."""

    model_config = ConfigDict(frozen=True)

    rho: float = Field(..., ge=0, allow_inf_nan=False, description="linear SNR")
    alpha: float = Field(..., gt=0, allow_inf_nan=False, description="N/M")


@dataclass
class SaddleSolution:
    """Replica-symmetric fixed point plus convergence metadata"""

    q: float
    E: float
    A: float
    residual: float
    iterations: int
    saturated: bool
    ambiguous: bool = False
    start: float = 0.0


@dataclass(frozen=True)
class SolverOptions:
    """Damped fixed-point iteration parameters"""

    tol: float = 1e-12
    max_iter: int = 10_000
    damping: float = 0.5
    min_damping: float = 1.0 / 64.0
    saturation_eps: float = 1e-8
    second_start: Optional[float] = 0.99
    ambiguity_tol: float = 1e-6
    rule: Optional[ExpectationRule] = None

    @classmethod
    def from_settings(cls, **overrides) -> "SolverOptions":
        values = dict(
            tol=settings.solver_tol,
            max_iter=settings.solver_max_iter,
            damping=settings.solver_damping,
            min_damping=settings.solver_min_damping,
            saturation_eps=settings.saturation_eps,
            second_start=settings.second_start,
            ambiguity_tol=settings.ambiguity_tol,
        )
        values.update(overrides)
        return cls(**values)


@dataclass
class FixedPoint:
    q: float
    E: float
    residual: float
    iterations: int
    saturated: bool
    start: float


def a_of_q(point: SystemPoint, q: float) -> float:
    """A = √(ρ / (1 + ρ(1 − q)))."""
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"overlap q must lie in [0, 1], got {q}")
    return math.sqrt(point.rho / (1.0 + point.rho * (1.0 - q)))


def q_update(E: float, rule: Optional[ExpectationRule] = None) -> float:
    """q = E_z[tanh(√E z + E)], clipped into [0, 1] against quadrature round-off."""
    if not E >= 0:
        raise DomainError(f"conjugate parameter must be >= 0, got E={E}")
    if E == 0.0:
        return 0.0
    root = math.sqrt(E)
    value = gauss_expect(lambda z: np.tanh(root * z + E), rule)
    return min(max(value, 0.0), 1.0)


def scaled_inv_q_integral(a: float, rule: Optional[ExpectationRule] = None) -> float:
    """
    ∫ exp(−(a² + ½) z²) / Q(a z) dz.

    Under a fixed-node rule the substitution z = u/√(1+a²) gives
    √(2π)/√(1+a²) · E_u[2 / erfcx(a u / √(2(1+a²)))], whose integrand is smooth for any a.
    The adaptive rule integrates the original integrand on its effective support instead.
    """
    if a == 0.0:
        return 2.0 * math.sqrt(2.0 * math.pi)
    width = 1.0 / math.sqrt(1.0 + a * a)
    rule = resolve_rule(rule)
    if isinstance(rule, AdaptiveRule):
        half = 1.1 * rule.cutoff * width
        return adaptive_integral(lambda z: inv_q_weighted(a, z), -half, half, tol=rule.tol)
    b = a * width / math.sqrt(2.0)
    expectation = gauss_expect(lambda u: 2.0 / special.erfcx(b * u), rule)
    return math.sqrt(2.0 * math.pi) * width * expectation


def e_update(point: SystemPoint, q: float, rule: Optional[ExpectationRule] = None) -> float:
    """E = α A² / (π√(2π)) ∫ exp(−(A²q + ½) z²) / Q(A√q z) dz at interior q."""
    if q == 1.0:
        raise BoundarySaddleError("e_update is singular at q = 1 (boundary saddle point)")
    if not 0.0 <= q < 1.0:
        raise DomainError(f"overlap q must lie in [0, 1), got {q}")
    A = a_of_q(point, q)
    a = A * math.sqrt(q)
    prefactor = point.alpha * A * A / (math.pi * math.sqrt(2.0 * math.pi))
    return prefactor * scaled_inv_q_integral(a, rule)


def initial_guess(point: SystemPoint) -> float:
    """First-order small-α overlap 2αρ/((1+ρ)π), capped at 0.9."""
    return min(0.9, 2.0 * point.alpha * point.rho / ((1.0 + point.rho) * math.pi))


def iterate_fixed_point(
    e_of_q: Callable[[float], float],
    q0: float,
    options: SolverOptions,
    rule: Optional[ExpectationRule] = None,
) -> FixedPoint:
    """Damped substitution q ← q + λ(q_update(E(q)) − q); λ halves on defect sign change."""
    q = q0
    damping = options.damping
    E_prev: Optional[float] = None
    prev_defect = 0.0
    E = 0.0
    residual = math.inf

    for iteration in range(1, options.max_iter + 1):
        E = e_of_q(q)
        defect = q_update(E, rule) - q
        residual = abs(defect) if E_prev is None else max(abs(defect), abs(E - E_prev))
        if residual <= options.tol:
            return FixedPoint(
                q=q, E=E, residual=residual, iterations=iteration, saturated=False, start=q0
            )

        if prev_defect * defect < 0.0:
            damping = max(0.5 * damping, options.min_damping)
        prev_defect = defect

        q_next = q + damping * defect
        if q_next > 1.0 - options.saturation_eps:
            return FixedPoint(
                q=1.0, E=E, residual=residual, iterations=iteration, saturated=True, start=q0
            )
        q = max(q_next, 0.0)
        E_prev = E

    raise ConvergenceError(
        f"saddle-point iteration from q0={q0:.4g} did not converge",
        q=q,
        E=E,
        residual=residual,
        iterations=options.max_iter,
    )


def solve_saddle(point: SystemPoint, options: Optional[SolverOptions] = None) -> SaddleSolution:
    """
    Solve the saddle-point system at ``point``.

    Start from the small-α guess; if that run saturates, confirm from q0 = 0, which reaches the
    smallest fixed point when an interior one exists. A second start (``second_start``) looks
    for a coexisting interior solution. When two interior solutions differ by more than
    ``ambiguity_tol`` the one with the smaller overlap is reported and flagged ambiguous. That
    is the branch continuous with q0 = 0, whose noise-free limit reaches 1 only at α*.
    """
    opts = options or SolverOptions.from_settings()
    rule = resolve_rule(opts.rule)

    def e_of_q(q: float) -> float:
        return e_update(point, q, rule)

    q0 = initial_guess(point)
    primary: Optional[FixedPoint] = None
    failure: Optional[ConvergenceError] = None
    try:
        primary = iterate_fixed_point(e_of_q, q0, opts, rule)
        if primary.saturated and q0 > 0.0:
            logger.debug(f"start q0={q0:.4g} saturated at {point}; confirming from q0=0")
            primary = iterate_fixed_point(e_of_q, 0.0, opts, rule)
    except ConvergenceError as exc:
        failure = exc

    if primary is not None and primary.saturated:
        return _to_solution(point, primary)

    secondary: Optional[FixedPoint] = None
    if opts.second_start is not None and opts.second_start != q0:
        try:
            secondary = iterate_fixed_point(e_of_q, opts.second_start, opts, rule)
        except ConvergenceError as exc:
            logger.debug(f"second start q0={opts.second_start} did not converge at {point}: {exc}")

    if primary is None:
        assert failure is not None
        if secondary is None or secondary.saturated:
            raise failure
        logger.warning(f"primary start failed at {point}; using second start ({failure})")
        return _to_solution(point, secondary)

    if (
        secondary is None
        or secondary.saturated
        or abs(secondary.q - primary.q) <= opts.ambiguity_tol
    ):
        return _to_solution(point, primary)

    first = _to_solution(point, primary)
    second = _to_solution(point, secondary)
    value_first = rs_expression(point.alpha, point.rho, first.q, first.E, first.A, rule)
    value_second = rs_expression(point.alpha, point.rho, second.q, second.E, second.A, rule)
    chosen = second if second.q < first.q else first
    chosen.ambiguous = True
    logger.warning(
        f"two interior saddle points at {point}: q={first.q:.6g} (C={value_first:.6g}) and "
        f"q={second.q:.6g} (C={value_second:.6g}); reporting q={chosen.q:.6g}"
    )
    return chosen


def _to_solution(point: SystemPoint, fixed: FixedPoint) -> SaddleSolution:
    A = math.sqrt(point.rho) if fixed.saturated else a_of_q(point, fixed.q)
    return SaddleSolution(
        q=fixed.q,
        E=fixed.E,
        A=A,
        residual=fixed.residual,
        iterations=fixed.iterations,
        saturated=fixed.saturated,
        start=fixed.start,
    )
