"""
Numerically stable special functions.

Everything here accepts scalars or numpy arrays and returns the same shape. Probabilities are
kept in the linear domain; the ``log_*`` helpers cover arguments where the linear value
underflows. Entropies are in bits.
"""
import math
from typing import Union

import numpy as np
from scipy import special

from onebit.common.errors import DomainError

ArrayLike = Union[float, np.ndarray]

LN2 = math.log(2.0)
SQRT2 = math.sqrt(2.0)


def q_function(x: ArrayLike) -> ArrayLike:
    """Standard normal tail probability Q(x) = P(Z > x)."""
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / SQRT2)


def q_function_scaled(x: ArrayLike) -> ArrayLike:
    """exp(x²/2)·Q(x), finite and strictly positive where Q itself underflows."""
    return 0.5 * special.erfcx(np.asarray(x, dtype=float) / SQRT2)


def log_q_function(x: ArrayLike) -> ArrayLike:
    """ln Q(x) without underflow."""
    return special.log_ndtr(-np.asarray(x, dtype=float))


def inv_q_weighted(a: float, z: ArrayLike) -> ArrayLike:
    """
    exp(−(a² + ½)·z²) / Q(a·z), the saddle-point integrand for the conjugate parameter.

    Evaluated as 2·exp(−(a²/2 + ½)·z²) / erfcx(a·z/√2), which never forms the ratio of two
    underflowed quantities. Large |z| gives 0, not NaN.
    """
    if not a > 0:
        raise DomainError(f"inv_q_weighted requires a > 0, got a={a}")
    z = np.asarray(z, dtype=float)
    with np.errstate(over="ignore"):
        return 2.0 * np.exp(-(0.5 * a * a + 0.5) * z * z) / special.erfcx(a * z / SQRT2)


def log_inv_q_weighted(a: float, z: ArrayLike) -> ArrayLike:
    """Natural log of :func:`inv_q_weighted`, finite for all finite z."""
    if not a > 0:
        raise DomainError(f"log_inv_q_weighted requires a > 0, got a={a}")
    z = np.asarray(z, dtype=float)
    return -(a * a + 0.5) * z * z - special.log_ndtr(-a * z)


def binary_entropy(p: ArrayLike) -> ArrayLike:
    """H2(p) in bits, with 0·log 0 = 0."""
    p = np.asarray(p, dtype=float)
    if np.any(np.isnan(p)) or np.any(p < 0.0) or np.any(p > 1.0):
        raise DomainError("binary_entropy requires 0 <= p <= 1")
    return (special.entr(p) + special.entr(1.0 - p)) / LN2


def binary_entropy_of_q(x: ArrayLike) -> ArrayLike:
    """
    H2(Q(x)) in bits.

    Both branch probabilities come from log_ndtr, so deep tails neither lose precision to
    1 − Q(x) cancellation nor produce 0·(−inf).
    """
    x = np.asarray(x, dtype=float)
    log_p = special.log_ndtr(-x)
    log_1mp = special.log_ndtr(x)
    return -(np.exp(log_p) * log_p + np.exp(log_1mp) * log_1mp) / LN2


def log2_cosh(x: ArrayLike) -> ArrayLike:
    """log2(cosh x) as (|x| + log1p(e^{−2|x|}) − ln 2)/ln 2; exactly even, no overflow."""
    ax = np.abs(np.asarray(x, dtype=float))
    return (ax + np.log1p(np.exp(-2.0 * ax)) - LN2) / LN2
