"""Rayleigh channel draws and sign-vector alphabets"""

from functools import lru_cache
import itertools
from typing import Union

import numpy as np

from onebit.common.errors import DomainError

RngLike = Union[int, np.random.SeedSequence, np.random.Generator, None]

# numpy's default bit generator; recorded with every estimate
RNG_ALGORITHM = "numpy.PCG64"


def sample_channel(m: int, n: int, rng: RngLike = None) -> np.ndarray:
    """n×m matrix of i.i.d. N(0, 1) entries; a fixed integer seed gives a fixed matrix."""
    if m < 1 or n < 1:
        raise DomainError(f"channel dimensions must be >= 1, got m={m}, n={n}")
    return np.random.default_rng(rng).standard_normal((n, m))


def sample_complex_channel(m: int, n: int, rng: RngLike = None) -> np.ndarray:
    """n×m complex matrix whose real and imaginary parts are independent N(0, 1)."""
    if m < 1 or n < 1:
        raise DomainError(f"channel dimensions must be >= 1, got m={m}, n={n}")
    gen = np.random.default_rng(rng)
    return gen.standard_normal((n, m)) + 1j * gen.standard_normal((n, m))


def realify(channel: np.ndarray) -> np.ndarray:
    """[[Re H, −Im H], [Im H, Re H]]: the 2n×2m real channel of the I-Q model."""
    re, im = channel.real, channel.imag
    return np.block([[re, -im], [im, re]])


@lru_cache(maxsize=32)
def sign_patterns(width: int) -> np.ndarray:
    """All 2^width vectors in {+1, −1}^width, first coordinate most significant, +1 first."""
    if width < 0:
        raise DomainError(f"width must be >= 0, got {width}")
    patterns = np.array(list(itertools.product((1.0, -1.0), repeat=width)), dtype=float)
    patterns = patterns.reshape(2**width, width)
    patterns.flags.writeable = False
    return patterns
