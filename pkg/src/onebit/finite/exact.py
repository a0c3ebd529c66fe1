"""
Finite-size capacity C(ρ, M, N) with uniform ±1 inputs.

    C = (H(y|H) − H(y|x,H)) / M,    y = sign(√(ρ/M)·H·x + w)

H(y|H) is computed per drawn channel, exactly by enumerating the 2^N outputs when that is
feasible and by sampling outputs otherwise. Every output table is built from two half tables:
with the receivers split into halves a and b,

    p(y_a, y_b) = 2^{−M} Σ_x p(y_a|x) p(y_b|x) = (P_a P_bᵀ)[y_a, y_b] / 2^M,

and each half table is one matrix product of sign indicators against per-receiver
log-likelihoods, so nothing of size 2^N × 2^M × N is ever formed.
"""
from dataclasses import dataclass
from enum import Enum
import math
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import special

from onebit.common.config import settings
from onebit.common.errors import DomainError, FeasibilityError
from onebit.common.logger import logger
from onebit.common.parallel import parallel_map
from onebit.numerics.quadrature import ExpectationRule
from onebit.numerics.special import LN2, binary_entropy_of_q
from onebit.replica.functional import single_transceiver_capacity

from .channel import RNG_ALGORITHM, realify, sample_channel, sample_complex_channel, sign_patterns

# Upper bound on the entries of one (samples × inputs) log-likelihood block
_SAMPLE_BLOCK = 1 << 22
# The direct oracle forms a 2^N × 2^M × N tensor
_DIRECT_LIMIT = 22


class Method(str, Enum):
    """How H(y|H) is evaluated"""

    ENUMERATE_OUTPUTS = "enumerate_outputs"
    SAMPLE_OUTPUTS = "sample_outputs"


class Conditional(str, Enum):
    """How H(y|x,H) is evaluated"""

    CLOSED_FORM = "closed_form"
    PER_CHANNEL = "per_channel"


class FiniteSystem(BaseModel):
    """M transmitters, N receivers at linear SNR ρ"""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1, description="transmitter count")
    n: int = Field(..., ge=1, description="receiver count")
    rho: float = Field(..., ge=0, allow_inf_nan=False, description="linear SNR")

    @property
    def alpha(self) -> float:
        return self.n / self.m


@dataclass
class ExactCapacityEstimate:
    """Channel-averaged capacity estimate in bits per transmitter"""

    system: FiniteSystem
    mean: float
    std_err: float
    num_channels: int
    seed: int
    method: Method
    conditional: Conditional
    complex_signals: bool = False
    rng_algorithm: str = RNG_ALGORITHM
    values: Tuple[float, ...] = ()


# ---------------------------------------------------------------------------------------------
# Per-channel quantities
# ---------------------------------------------------------------------------------------------


def cond_entropy_given_input(
    rho: float, n: int, rule: Optional[ExpectationRule] = None
) -> float:
    """H(y|x,H) averaged over channels: n(1 − c(ρ)) bits."""
    if n < 0:
        raise DomainError(f"receiver count must be >= 0, got {n}")
    return n * (1.0 - single_transceiver_capacity(rho, rule))


def _input_signals(channel: np.ndarray, rho: float) -> np.ndarray:
    """Noise-free receiver inputs √(ρ/M)·H·x for every x, shape (2^M, N)."""
    if channel.ndim != 2:
        raise DomainError(f"channel must be a 2-D matrix, got shape {channel.shape}")
    if not (rho >= 0 and math.isfinite(rho)):
        raise DomainError(f"rho must be finite and >= 0, got {rho}")
    m = channel.shape[1]
    return math.sqrt(rho / m) * (sign_patterns(m) @ channel.T)


def _log_likelihood_table(signals: np.ndarray, outputs: np.ndarray) -> np.ndarray:
    """ln p(y|x) for every row y of ``outputs`` and every input row of ``signals``."""
    plus = (outputs > 0).astype(float)
    return plus @ special.log_ndtr(signals).T + (1.0 - plus) @ special.log_ndtr(-signals).T


def _half_table(signals: np.ndarray) -> np.ndarray:
    width = signals.shape[1]
    if width == 0:
        return np.ones((1, signals.shape[0]))
    return np.exp(_log_likelihood_table(signals, sign_patterns(width)))


def _check_enumerable(m: int, n: int) -> None:
    if n > settings.max_enumerated_outputs or m + n > settings.max_enumeration_size:
        raise FeasibilityError(
            f"enumerating 2^{n} outputs over 2^{m} inputs exceeds the limits "
            f"(n <= {settings.max_enumerated_outputs}, m + n <= {settings.max_enumeration_size}); "
            f"use the output-sampling path (method={Method.SAMPLE_OUTPUTS.value})"
        )


def output_distribution(channel: np.ndarray, rho: float) -> np.ndarray:
    """
    p(y|H) over all y ∈ {±1}^N, in :func:`sign_patterns` order.

    p(y|H) = 2^{−M} Σ_x Π_k Q(−y_k √(ρ/M) h_kᵀx).
    """
    n, m = channel.shape
    _check_enumerable(m, n)
    signals = _input_signals(channel, rho)
    split = (n + 1) // 2
    first = _half_table(signals[:, :split])
    second = _half_table(signals[:, split:])
    return (first @ second.T).ravel() / float(2**m)


def output_entropy(table: np.ndarray) -> float:
    """−Σ p log2 p of a probability table, with 0·log 0 = 0."""
    return math.fsum(special.entr(table)) / LN2


def sampled_output_entropy(
    channel: np.ndarray,
    rho: float,
    samples: int,
    rng: np.random.Generator,
) -> Tuple[float, float]:
    """
    Monte-Carlo H(y|H) = E[−log2 p(y|H)] over outputs drawn from the channel.

    Returns (estimate, standard error). The inputs are still enumerated to evaluate p(y|H).
    """
    n, m = channel.shape
    if m > settings.max_enumerated_outputs:
        raise FeasibilityError(
            f"output sampling enumerates 2^{m} inputs; "
            f"m must be <= {settings.max_enumerated_outputs}"
        )
    if samples < 2:
        raise DomainError(f"need at least 2 output samples, got {samples}")

    signals = _input_signals(channel, rho)
    inputs = rng.choice(np.array([-1.0, 1.0]), size=(samples, m))
    noise = rng.standard_normal((samples, n))
    outputs = np.where(math.sqrt(rho / m) * inputs @ channel.T + noise >= 0.0, 1.0, -1.0)

    block = max(1, _SAMPLE_BLOCK // signals.shape[0])
    log_p = np.empty(samples)
    for start in range(0, samples, block):
        chunk = outputs[start : start + block]
        table = _log_likelihood_table(signals, chunk)
        log_p[start : start + block] = special.logsumexp(table, axis=1)
    bits = -(log_p - m * LN2) / LN2
    return float(bits.mean()), float(bits.std(ddof=1) / math.sqrt(samples))


def conditional_entropy_for_channel(channel: np.ndarray, rho: float) -> float:
    """H(y|x,H) = 2^{−M} Σ_x Σ_k H2(Q(√(ρ/M) h_kᵀx)) for one channel."""
    return float(binary_entropy_of_q(_input_signals(channel, rho)).sum(axis=1).mean())


def mutual_information_direct(channel: np.ndarray, rho: float) -> float:
    """
    I(x; y|H) = Σ_{x,y} 2^{−M} p(y|x) log2(p(y|x)/p(y)), summed over the full joint table.

    Independent of the factorized output enumeration; used as a cross-check on small systems.
    """
    n, m = channel.shape
    if m + n > _DIRECT_LIMIT:
        raise FeasibilityError(f"direct summation needs m + n <= {_DIRECT_LIMIT}, got {m + n}")
    signals = _input_signals(channel, rho)
    outputs = sign_patterns(n)
    likelihood = np.exp(special.log_ndtr(outputs[:, None, :] * signals[None, :, :]).sum(axis=2))
    marginal = likelihood.mean(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(likelihood > 0.0, likelihood * np.log2(likelihood / marginal), 0.0)
    return math.fsum(terms.ravel()) / float(2**m)


# ---------------------------------------------------------------------------------------------
# Channel-averaged estimate
# ---------------------------------------------------------------------------------------------


class _ChannelTask(NamedTuple):
    m: int
    n: int
    rho: float
    seed: np.random.SeedSequence
    method: Method
    conditional: Conditional
    closed_form: float
    samples: int
    complex_signals: bool


def _channel_term(task: _ChannelTask) -> float:
    """(H(y|H) − H(y|x,H)) / M for one channel draw."""
    rng = np.random.default_rng(task.seed)
    if task.complex_signals:
        channel = realify(sample_complex_channel(task.m, task.n, rng))
    else:
        channel = sample_channel(task.m, task.n, rng)

    if task.method == Method.ENUMERATE_OUTPUTS:
        h_out = output_entropy(output_distribution(channel, task.rho))
    else:
        h_out, _ = sampled_output_entropy(channel, task.rho, task.samples, rng)

    if task.conditional == Conditional.PER_CHANNEL:
        h_cond = conditional_entropy_for_channel(channel, task.rho)
    else:
        h_cond = task.closed_form
    return (h_out - h_cond) / task.m


def select_method(inputs: int, outputs: int) -> Method:
    """Enumerate when feasible, otherwise sample outputs."""
    limit = settings.max_enumerated_outputs
    if outputs <= limit and inputs + outputs <= settings.max_enumeration_size:
        return Method.ENUMERATE_OUTPUTS
    if inputs <= limit:
        return Method.SAMPLE_OUTPUTS
    raise FeasibilityError(
        f"system with {inputs} real inputs is too large for both enumeration and output sampling"
    )


def _summarize(values: List[float]) -> Tuple[float, float]:
    count = len(values)
    mean = math.fsum(values) / count
    variance = math.fsum((v - mean) ** 2 for v in values) / (count - 1)
    return mean, math.sqrt(variance / count)


def _estimate(
    system: FiniteSystem,
    num_channels: int,
    seed: int,
    conditional: Conditional,
    method: Optional[Method],
    samples: Optional[int],
    workers: Optional[int],
    rule: Optional[ExpectationRule],
    complex_signals: bool,
) -> ExactCapacityEstimate:
    if num_channels < 2:
        raise DomainError(f"num_channels must be >= 2, got {num_channels}")
    conditional = Conditional(conditional)

    scale = 2 if complex_signals else 1
    inputs, outputs = scale * system.m, scale * system.n
    method = select_method(inputs, outputs) if method is None else Method(method)
    if method == Method.ENUMERATE_OUTPUTS:
        _check_enumerable(inputs, outputs)

    closed_form = cond_entropy_given_input(system.rho, outputs, rule)
    children = np.random.SeedSequence(seed).spawn(num_channels)
    tasks = [
        _ChannelTask(
            m=system.m,
            n=system.n,
            rho=system.rho,
            seed=child,
            method=method,
            conditional=conditional,
            closed_form=closed_form,
            samples=samples or settings.output_samples,
            complex_signals=complex_signals,
        )
        for child in children
    ]

    logger.info(
        f"finite capacity m={system.m} n={system.n} rho={system.rho:g} complex={complex_signals}: "
        f"{num_channels} channels via {method.value}"
    )
    values = parallel_map(_channel_term, tasks, workers)
    mean, std_err = _summarize(values)
    return ExactCapacityEstimate(
        system=system,
        mean=mean,
        std_err=std_err,
        num_channels=num_channels,
        seed=seed,
        method=method,
        conditional=conditional,
        complex_signals=complex_signals,
        values=tuple(values),
    )


def exact_capacity(
    system: FiniteSystem,
    num_channels: int,
    seed: int,
    conditional: Conditional = Conditional.CLOSED_FORM,
    method: Optional[Method] = None,
    samples: Optional[int] = None,
    workers: Optional[int] = None,
    rule: Optional[ExpectationRule] = None,
) -> ExactCapacityEstimate:
    """
    C(ρ, M, N) averaged over ``num_channels`` i.i.d. Rayleigh draws.

    Channel i is drawn from the i-th child of ``SeedSequence(seed)``, so results do not depend
    on how channels are distributed across workers.
    """
    return _estimate(system, num_channels, seed, conditional, method, samples, workers, rule, False)


def complex_exact_capacity(
    system: FiniteSystem,
    num_channels: int,
    seed: int,
    conditional: Conditional = Conditional.CLOSED_FORM,
    method: Optional[Method] = None,
    samples: Optional[int] = None,
    workers: Optional[int] = None,
    rule: Optional[ExpectationRule] = None,
) -> ExactCapacityEstimate:
    """I-Q model capacity per complex transmitter: realified 2N×2M channel at √(ρ/(2M))."""
    return _estimate(system, num_channels, seed, conditional, method, samples, workers, rule, True)
