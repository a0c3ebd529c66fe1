"""
Building blocks of the replica-symmetric capacity expression.

The narrow Gaussian integrals are rescaled before quadrature: with s = 1/√(1+x),

    E_z[g(z)] = s · E_u[exp(u²(1−s²)/2) · g(s·u)],

which turns H2(Q(√x z)), a spike of width 1/√x, into a smooth, polynomially bounded
integrand in u.

For the log-cosh term we use E_z[x] = E with x = E + √E z, so

    E_z[log2 cosh x] = (E − ln2 + E_z[softplus(−2x)]) / ln2,

and the large-E cancellation between E/ln2 and the log-cosh expectation happens analytically.
"""
import math
from typing import Optional

import numpy as np

from onebit.common.errors import DomainError
from onebit.numerics.quadrature import ExpectationRule, gauss_expect
from onebit.numerics.special import LN2, binary_entropy_of_q, log2_cosh


def single_transceiver_capacity(rho: float, rule: Optional[ExpectationRule] = None) -> float:
    """c(ρ) = 1 − E_z[H2(Q(√ρ z))], in bits."""
    if not rho >= 0 or math.isinf(rho):
        raise DomainError(f"single_transceiver_capacity requires finite rho >= 0, got {rho}")
    if rho == 0.0:
        return 0.0
    s = 1.0 / math.sqrt(1.0 + rho)
    slope = math.sqrt(rho) * s
    growth = 0.5 * (1.0 - s * s)

    def integrand(u: np.ndarray) -> np.ndarray:
        return np.exp(growth * u * u) * binary_entropy_of_q(slope * u)

    return 1.0 - s * gauss_expect(integrand, rule)


def _check_conjugate(E: float) -> None:
    if not E >= 0:
        raise DomainError(f"conjugate parameter must be >= 0, got E={E}")


def log_cosh_expectation(E: float, rule: Optional[ExpectationRule] = None) -> float:
    """E_z[log2 cosh(E + √E z)], by direct quadrature."""
    _check_conjugate(E)
    if E == 0.0:
        return 0.0
    root = math.sqrt(E)
    return gauss_expect(lambda z: log2_cosh(E + root * z), rule)


def softplus_expectation(E: float, rule: Optional[ExpectationRule] = None) -> float:
    """E_z[ln(1 + exp(−2(E + √E z)))] in nats; ln2 at E=0, vanishing as E grows."""
    _check_conjugate(E)
    if E == 0.0:
        return LN2
    root = math.sqrt(E)
    return gauss_expect(lambda z: np.logaddexp(0.0, -2.0 * (E + root * z)), rule)


def binary_input_information(E: float, rule: Optional[ExpectationRule] = None) -> float:
    """E/ln2 − E_z[log2 cosh(E + √E z)]: increasing from 0 at E=0 towards 1."""
    return 1.0 - softplus_expectation(E, rule) / LN2


def rs_expression(
    alpha: float,
    rho: float,
    q: float,
    E: float,
    A: float,
    rule: Optional[ExpectationRule] = None,
) -> float:
    """Unclipped replica-symmetric capacity at an interior saddle point (q, E, A)."""
    # (E + Eq)/(2 ln2) − E_z[log2 cosh] rewritten through the softplus form
    outer = single_transceiver_capacity(rho, rule)
    channel_term = outer - single_transceiver_capacity(A * A * q, rule)
    penalty = E * (1.0 - q) / (2.0 * LN2) + softplus_expectation(E, rule) / LN2
    return alpha * channel_term + 1.0 - penalty
