"""
Random variates for the simulation studies.

Every sampler consumes open-interval uniforms from a numpy Generator, so a sample
is a pure function of the generator state. Normal, log-normal, exponential and
Weibull draws use the inverse transform; Beta is a ratio of gamma variates, and
gamma variates come from Cheng's rejection scheme (shape > 1) or algorithm GS
(shape < 1).
"""

# stdlib
import math
import hashlib
import logging
from typing import Callable, Dict

# 3rd-party
import numpy as np

# Local
from summstat.core.errors import DomainError
from summstat.core.normal_math import quantile
from summstat.core.model import (
    DistributionSpec,
    Normal,
    LogNormal,
    Beta,
    Exponential,
    Weibull,
)

LOG = logging.getLogger(__name__)

_UNIFORM_BITS = 52
_UNIFORM_SCALE = 2.0 ** -_UNIFORM_BITS
_LN4 = math.log(4.0)
_CHENG_SHIFT = 1.0 + math.log(4.5)
_MIN_BATCH = 16


def dist_code(dist: DistributionSpec) -> int:
    """Stable 64-bit code for a distribution tag, independent of PYTHONHASHSEED."""
    digest = hashlib.sha256(dist.tag.encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big')


def replication_rng(master_seed: int, dist: DistributionSpec, n: int, rep: int) -> np.random.Generator:
    """Independent stream for one replication, keyed on (master_seed, dist, n, rep)."""
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(dist_code(dist), n, rep))
    return np.random.Generator(np.random.PCG64(seq))


def open_uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws on the open interval (0, 1)."""
    return (rng.integers(0, 2 ** _UNIFORM_BITS, size=size) + 0.5) * _UNIFORM_SCALE


def _gamma_cheng(shape: float, size: int, rng: np.random.Generator) -> np.ndarray:
    ainv = math.sqrt(2.0 * shape - 1.0)
    bbb = shape - _LN4
    ccc = shape + ainv

    out = np.empty(size)
    filled = 0
    while filled < size:
        batch = max(2 * (size - filled), _MIN_BATCH)
        u1 = open_uniforms(rng, batch)
        u2 = open_uniforms(rng, batch)
        v = np.log(u1 / (1.0 - u1)) / ainv
        with np.errstate(over='ignore'):
            w = shape * np.exp(v)
        c1 = u1 * u1 * u2
        r = bbb + ccc * v - w
        accepted = w[((r + _CHENG_SHIFT - 4.5 * c1) >= 0.0) | (r >= np.log(c1))]
        take = accepted[:size - filled]
        out[filled:filled + len(take)] = take
        filled += len(take)
    return out


def _gamma_gs(shape: float, size: int, rng: np.random.Generator) -> np.ndarray:
    b = (math.e + shape) / math.e
    out = np.empty(size)
    filled = 0
    while filled < size:
        batch = max(2 * (size - filled), _MIN_BATCH)
        p = b * open_uniforms(rng, batch)
        u1 = open_uniforms(rng, batch)
        with np.errstate(divide='ignore', invalid='ignore'):
            w = np.where(p <= 1.0, p ** (1.0 / shape), -np.log((b - p) / shape))
            ok = np.where(p > 1.0, u1 <= w ** (shape - 1.0), u1 <= np.exp(-w))
        take = w[ok & (w > 0.0)][:size - filled]
        out[filled:filled + len(take)] = take
        filled += len(take)
    return out


def gamma(shape: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Gamma(shape, 1) variates."""
    if not (math.isfinite(shape) and shape > 0):
        raise DomainError(f"gamma shape must be positive, got {shape!r}")
    if shape == 1.0:
        return -np.log(open_uniforms(rng, size))
    if shape > 1.0:
        return _gamma_cheng(shape, size, rng)
    return _gamma_gs(shape, size, rng)


def _sample_normal(dist: Normal, n: int, rng: np.random.Generator) -> np.ndarray:
    return dist.mu + dist.sigma * quantile(open_uniforms(rng, n))


def _sample_lognormal(dist: LogNormal, n: int, rng: np.random.Generator) -> np.ndarray:
    return np.exp(dist.mu + dist.sigma * quantile(open_uniforms(rng, n)))


def _sample_beta(dist: Beta, n: int, rng: np.random.Generator) -> np.ndarray:
    x = gamma(dist.alpha, n, rng)
    y = gamma(dist.beta, n, rng)
    return x / (x + y)


def _sample_exponential(dist: Exponential, n: int, rng: np.random.Generator) -> np.ndarray:
    return -np.log(open_uniforms(rng, n)) / dist.rate


def _sample_weibull(dist: Weibull, n: int, rng: np.random.Generator) -> np.ndarray:
    return dist.scale * (-np.log(open_uniforms(rng, n))) ** (1.0 / dist.k)


SAMPLERS: Dict[type, Callable[[DistributionSpec, int, np.random.Generator], np.ndarray]] = {
    Normal: _sample_normal,
    LogNormal: _sample_lognormal,
    Beta: _sample_beta,
    Exponential: _sample_exponential,
    Weibull: _sample_weibull,
}


def sample(dist: DistributionSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"Sample size must be a positive integer, got {n!r}")
    sampler = SAMPLERS.get(type(dist))
    if sampler is None:
        raise DomainError(f"Unsupported distribution {dist!r}")
    return sampler(dist, n, rng)
