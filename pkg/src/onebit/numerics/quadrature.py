"""
Standard-normal expectation rules.

We need integrals over the standard normal measure

    E[f(z)] = ∫ Dz f(z),    Dz = (2π)^(-1/2) exp(-z²/2) dz.

Gauss–Hermite nodes/weights are for ∫ exp(-t²) g(t) dt. With z = √2·t,

    E[f(z)] ≈ Σ (w_i/√π) f(√2·t_i),

so the returned weights sum to 1. Integrands whose effective width shrinks (large A²q) are
either rescaled by the caller or routed through :class:`AdaptiveRule`, which subdivides
[-Z, Z] with QUADPACK until the tolerance is met.
"""
from dataclasses import dataclass
from functools import lru_cache
import math
from typing import Callable, Optional, Union

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy import integrate

from onebit.common.config import settings
from onebit.common.errors import DomainError, QuadratureError

Integrand = Callable[[np.ndarray], np.ndarray]

# 2·Q(8.5) ≈ 1.9e-17, below the double-precision resolution of an O(1) expectation
GAUSSIAN_CUTOFF = 8.5
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights for standard-normal expectations. Immutable; safe to share."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self) -> None:
        if self.nodes.ndim != 1 or self.nodes.shape != self.weights.shape:
            raise DomainError("nodes and weights must be 1-D arrays of equal length")
        if np.any(self.weights < 0):
            raise DomainError("quadrature weights must be non-negative")
        self.nodes.flags.writeable = False
        self.weights.flags.writeable = False

    def expect(self, f: Integrand) -> float:
        values = np.asarray(f(self.nodes), dtype=float)
        bad = np.isnan(values)
        if bad.any():
            node = float(self.nodes[np.argmax(bad)])
            raise QuadratureError(f"integrand returned NaN at node z={node:.6g}", node=node)
        return float(np.dot(self.weights, values))


@dataclass(frozen=True)
class AdaptiveRule:
    """Tolerance-driven subdivision of [-cutoff, cutoff] against the normal density."""

    tol: float = 1e-12
    cutoff: float = GAUSSIAN_CUTOFF
    limit: int = 500

    def expect(self, f: Integrand) -> float:
        return adaptive_integral(
            lambda z: f(z) * _INV_SQRT_2PI * math.exp(-0.5 * z * z),
            -self.cutoff,
            self.cutoff,
            tol=self.tol,
            limit=self.limit,
        )


ExpectationRule = Union[QuadratureRule, AdaptiveRule]


def gauss_hermite_rule(order: int) -> QuadratureRule:
    """Gauss–Hermite rule rescaled to the standard normal measure."""
    if order < 2:
        raise DomainError(f"quadrature order must be >= 2, got {order}")
    t, w = hermgauss(order)
    return QuadratureRule(nodes=math.sqrt(2.0) * t, weights=w / math.sqrt(math.pi), order=order)


@lru_cache(maxsize=8)
def _cached_hermite(order: int) -> QuadratureRule:
    return gauss_hermite_rule(order)


def default_rule() -> ExpectationRule:
    """Rule selected by settings (ONEBIT_QUADRATURE / ONEBIT_QUAD_ORDER)."""
    if settings.quadrature == "adaptive":
        return AdaptiveRule(tol=settings.adaptive_tol)
    return _cached_hermite(settings.quad_order)


def resolve_rule(rule: Optional[ExpectationRule]) -> ExpectationRule:
    return default_rule() if rule is None else rule


def gauss_expect(f: Integrand, rule: Optional[ExpectationRule] = None) -> float:
    """E_{z~N(0,1)}[f(z)] under the given rule; NaN from f raises QuadratureError."""
    result = resolve_rule(rule).expect(f)
    if math.isnan(result):
        raise QuadratureError("expectation evaluated to NaN")
    return result


def adaptive_integral(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    limit: int = 500,
) -> float:
    """∫_lo^hi f(z) dz by adaptive subdivision; the origin is passed as a breakpoint."""

    def checked(z: float) -> float:
        value = float(f(z))
        if math.isnan(value):
            raise QuadratureError(f"integrand returned NaN at z={z:.6g}", node=z)
        return value

    points = [0.0] if lo < 0.0 < hi else None
    value, _ = integrate.quad(checked, lo, hi, epsabs=tol, epsrel=tol, limit=limit, points=points)
    return float(value)
