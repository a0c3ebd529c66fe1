"""
Constant-capacity contours and the large-α SNR/ratio tradeoff.

Along a contour C(ρ, α) = c the SNR is found per α by root finding in log ρ, which is valid
because capacity is nondecreasing in ρ. For large α the contour constant is E_c, the conjugate
parameter at which the large-α capacity equals c, and E ≈ (α/π)(−0.3ρ² + 1.8ρ) turns the
contour into a closed form for ρ.
"""
from dataclasses import dataclass
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from onebit.asymptotics.regimes import large_alpha_e
from onebit.common.errors import BracketError, DomainError, OneBitError
from onebit.common.logger import logger
from onebit.common.parallel import parallel_map
from onebit.numerics.quadrature import ExpectationRule, resolve_rule
from onebit.replica.capacity import capacity
from onebit.replica.functional import binary_input_information
from onebit.replica.saddle import SolverOptions, SystemPoint

# Coefficients of E ≈ (α/π)(aρ² + bρ)
QUADRATIC_COEFFICIENTS = (-0.3, 1.8)
QUADRATIC_RHO_MAX = 1.5

CONTOUR_TOL = 1e-4
INITIAL_BRACKET = (1e-4, 1e4)
BRACKET_LIMITS = (1e-12, 1e12)
BRACKET_GROWTH = 100.0


@dataclass
class ContourPoint:
    """A point on C(ρ, α) = c_target, or a no-solution marker when ``rho`` is None."""

    alpha: float
    c_target: float
    rho: Optional[float] = None
    c_avg: Optional[float] = None
    rho_approx: Optional[float] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.rho is not None


@dataclass
class QuadraticFit:
    """Least-squares refit of E/α ≈ (aρ² + bρ)/π on (0, rho_max]"""

    a: float
    b: float
    rho_max: float
    points: int
    max_rel_error_fit: float
    max_rel_error_printed: float


# ---------------------------------------------------------------------------------------------
# Full-solver contours
# ---------------------------------------------------------------------------------------------


def _check_target(c_target: float) -> None:
    if not 0.0 < c_target < 1.0:
        raise DomainError(f"capacity target must lie in (0, 1), got {c_target}")


def _bracket_log_rho(excess, alpha: float) -> Tuple[float, float]:
    lo, hi = INITIAL_BRACKET
    lo_limit, hi_limit = BRACKET_LIMITS
    while excess(math.log(lo)) > 0.0:
        if lo <= lo_limit:
            raise BracketError(f"capacity exceeds target at rho={lo:g} (alpha={alpha:g})")
        lo /= BRACKET_GROWTH
        logger.debug(f"growing contour bracket down to rho={lo:g}")
    while excess(math.log(hi)) < 0.0:
        if hi >= hi_limit:
            raise BracketError(f"capacity stays below target up to rho={hi:g} (alpha={alpha:g})")
        hi *= BRACKET_GROWTH
        logger.debug(f"growing contour bracket up to rho={hi:g}")
    return math.log(lo), math.log(hi)


def solve_contour_rho(
    alpha: float, c_target: float, options: Optional[SolverOptions] = None
) -> Tuple[float, float]:
    """ρ with capacity(ρ, α) = c_target; returns (ρ, capacity at ρ)."""
    _check_target(c_target)
    if c_target >= alpha:
        raise BracketError(f"target {c_target:g} is not below the bound min(1, alpha={alpha:g})")
    opts = options or SolverOptions.from_settings()

    def excess(log_rho: float) -> float:
        return capacity(SystemPoint(rho=math.exp(log_rho), alpha=alpha), opts).c_avg - c_target

    lo, hi = _bracket_log_rho(excess, alpha)
    log_rho = optimize.brentq(excess, lo, hi, xtol=1e-12, rtol=1e-12)
    rho = math.exp(log_rho)
    c_avg = capacity(SystemPoint(rho=rho, alpha=alpha), opts).c_avg
    if abs(c_avg - c_target) > CONTOUR_TOL:
        # capacity jumps to 1 where the interior saddle point disappears
        raise BracketError(
            f"capacity is discontinuous across the target at alpha={alpha:g} "
            f"(C={c_avg:.6g} at rho={rho:.6g})"
        )
    return rho, c_avg


def _trace_point(task: Tuple[float, float, SolverOptions, Optional[float]]) -> ContourPoint:
    alpha, c_target, options, e_c = task
    rho_approx = None
    if e_c is not None:
        try:
            rho_approx = snr_for_contour_approx(alpha, e_c)
        except DomainError:
            rho_approx = None
    try:
        rho, c_avg = solve_contour_rho(alpha, c_target, options)
    except OneBitError as exc:
        logger.debug(f"no contour point for c={c_target:g} at alpha={alpha:g}: {exc}")
        return ContourPoint(alpha=alpha, c_target=c_target, rho_approx=rho_approx, error=str(exc))
    return ContourPoint(alpha=alpha, c_target=c_target, rho=rho, c_avg=c_avg, rho_approx=rho_approx)


def contour(
    c_target: float,
    alpha_range: Tuple[float, float],
    steps: int,
    options: Optional[SolverOptions] = None,
    workers: Optional[int] = None,
    with_approx: bool = True,
) -> List[ContourPoint]:
    """Trace C(ρ, α) = c_target at ``steps`` evenly spaced α, in increasing α."""
    _check_target(c_target)
    lo, hi = alpha_range
    if not (0.0 < lo <= hi and math.isfinite(hi)):
        raise DomainError(f"alpha range must satisfy 0 < lo <= hi, got {alpha_range}")
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")

    alphas = np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])
    opts = options or SolverOptions.from_settings()
    e_c = e_for_capacity(c_target, opts.rule) if with_approx else None
    tasks = [(float(alpha), c_target, opts, e_c) for alpha in alphas]
    points = parallel_map(_trace_point, tasks, workers)
    found = sum(p.ok for p in points)
    logger.info(f"contour c={c_target:g}: {found} of {len(points)} points found")
    return points


def min_cost_point(points: Sequence[ContourPoint]) -> ContourPoint:
    """Contour point minimizing α + ρ."""
    valid = [p for p in points if p.ok]
    if not valid:
        raise DomainError("no contour point to choose from")
    return min(valid, key=lambda p: p.alpha + p.rho)


# ---------------------------------------------------------------------------------------------
# Large-α tradeoff
# ---------------------------------------------------------------------------------------------


def e_for_capacity(c_target: float, rule: Optional[ExpectationRule] = None) -> float:
    """E_c with E/ln2 − E_z[log2 cosh(E + √E z)] = c_target."""
    _check_target(c_target)
    rule = resolve_rule(rule)

    def excess(E: float) -> float:
        return binary_input_information(E, rule) - c_target

    hi = 1.0
    while excess(hi) < 0.0:
        hi *= 2.0
        if hi > 1e6:
            raise BracketError(f"could not bracket E for capacity {c_target}")
    return float(optimize.brentq(excess, 0.0, hi, xtol=1e-15, rtol=1e-14))


def quadratic_e(
    rho: float, alpha: float = 1.0, coefficients: Tuple[float, float] = QUADRATIC_COEFFICIENTS
) -> float:
    """(α/π)(aρ² + bρ)."""
    a, b = coefficients
    return alpha / math.pi * (a * rho * rho + b * rho)


def snr_for_contour_approx(
    alpha: float, e_c: float, coefficients: Tuple[float, float] = QUADRATIC_COEFFICIENTS
) -> float:
    """
    Smaller root of (α/π)(aρ² + bρ) = E_c.

    With the default coefficients this is ρ = 3 − √(9 − 10πE_c/(3α)).
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if e_c < 0:
        raise DomainError(f"E_c must be >= 0, got {e_c}")
    a, b = coefficients
    target = math.pi * e_c / alpha
    if a == 0.0:
        return target / b
    discriminant = b * b + 4.0 * a * target
    if discriminant < 0.0:
        raise DomainError(
            f"alpha={alpha:g} too small for this contour under the quadratic model "
            f"(discriminant {discriminant:.4g})"
        )
    return (-b + math.sqrt(discriminant)) / (2.0 * a)


def fit_quadratic_coefficients(
    rho_max: float = QUADRATIC_RHO_MAX,
    points: int = 60,
    rule: Optional[ExpectationRule] = None,
) -> QuadraticFit:
    """Refit (a, b) by least squares on the large-α E over ρ ∈ (0, rho_max]."""
    if not rho_max > 0:
        raise DomainError(f"rho_max must be > 0, got {rho_max}")
    if points < 2:
        raise DomainError(f"need at least 2 fit points, got {points}")
    rule = resolve_rule(rule)
    rhos = np.linspace(rho_max / points, rho_max, points)
    scaled = np.array([math.pi * large_alpha_e(float(rho), 1.0, rule) for rho in rhos])

    design = np.column_stack([rhos**2, rhos])
    (a, b), *_ = np.linalg.lstsq(design, scaled, rcond=None)

    def max_rel(coefficients: Tuple[float, float]) -> float:
        model = coefficients[0] * rhos**2 + coefficients[1] * rhos
        return float(np.max(np.abs(model - scaled) / scaled))

    fit = QuadraticFit(
        a=float(a),
        b=float(b),
        rho_max=rho_max,
        points=points,
        max_rel_error_fit=max_rel((a, b)),
        max_rel_error_printed=max_rel(QUADRATIC_COEFFICIENTS),
    )
    logger.debug(f"quadratic refit on (0, {rho_max:g}]: a={fit.a:.4f} b={fit.b:.4f}")
    return fit
