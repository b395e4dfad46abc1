"""
Standard-normal density, distribution and quantile functions.

All functions take a scalar or a numpy array. Scalars come back as Python floats
(`Probability` for `cdf`), arrays come back as float64 arrays of the same shape.

Accuracy:
    cdf       absolute error below 1e-12 everywhere; relative accuracy in the lower
              tail via a continued fraction beyond |z| > 6.
    quantile  rational approximation plus one Halley step, so that
              |cdf(quantile(p)) - p| <= 1e-9 for p in [1e-12, 1 - 1e-12].
"""

# stdlib
import math
import logging
from typing import Tuple, Union

# 3rd-party
import numpy as np
from scipy.special import erfc

# Local
from summstat.core.errors import DomainError, InfinityError

LOG = logging.getLogger(__name__)

SQRT_2PI = math.sqrt(2.0 * math.pi)
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
TAIL_CUTOFF = 6.0
_TAIL_TERMS = 60

# Rational approximation coefficients for the inverse normal CDF (Acklam)
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425

# Below this the Halley step would overflow exp(x^2/2)
_REFINE_FLOOR = -37.0

ArrayLike = Union[float, np.ndarray]


class Probability(float):
    """A float constrained to [0, 1]."""

    def __new__(cls, value):
        v = float(value)
        if not 0.0 <= v <= 1.0:
            raise DomainError(f"Probability must lie in [0, 1], got {value!r}")
        return super().__new__(cls, v)

    @property
    def value(self) -> float:
        return float(self)


def _as_array(x) -> Tuple[np.ndarray, bool]:
    scalar = np.ndim(x) == 0
    return np.asarray(x, dtype=np.float64), scalar


def _upper_tail(x: np.ndarray) -> np.ndarray:
    """1 - cdf(x) for x >= TAIL_CUTOFF via the Laplace continued fraction."""
    frac = np.zeros_like(x)
    for k in range(_TAIL_TERMS, 0, -1):
        frac = k / (x + frac)
    return np.exp(-0.5 * x * x) / SQRT_2PI / (x + frac)


def _log_upper_tail(x: np.ndarray) -> np.ndarray:
    frac = np.zeros_like(x)
    for k in range(_TAIL_TERMS, 0, -1):
        frac = k / (x + frac)
    return -0.5 * x * x - LOG_SQRT_2PI - np.log(x + frac)


def _cdf_values(z: np.ndarray) -> np.ndarray:
    out = np.atleast_1d(0.5 * erfc(-z / math.sqrt(2.0))).astype(np.float64)
    z1 = np.atleast_1d(z)
    lower = z1 < -TAIL_CUTOFF
    if np.any(lower):
        out[lower] = _upper_tail(-z1[lower])
    upper = z1 > TAIL_CUTOFF
    if np.any(upper):
        out[upper] = 1.0 - _upper_tail(z1[upper])
    return np.clip(out, 0.0, 1.0).reshape(np.shape(z))


def pdf(z: ArrayLike) -> ArrayLike:
    arr, scalar = _as_array(z)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"pdf requires finite input, got {z!r}")
    out = np.exp(-0.5 * arr * arr) / SQRT_2PI
    return float(out) if scalar else out


def cdf(z: ArrayLike) -> Union[Probability, np.ndarray]:
    arr, scalar = _as_array(z)
    if np.any(np.isnan(arr)):
        raise DomainError("cdf is undefined for NaN input")
    out = _cdf_values(arr)
    return Probability(out) if scalar else out


def log_cdf(z: ArrayLike) -> ArrayLike:
    """log(cdf(z)), finite far into the lower tail where cdf underflows."""
    arr, scalar = _as_array(z)
    if np.any(np.isnan(arr)):
        raise DomainError("log_cdf is undefined for NaN input")
    z1 = np.atleast_1d(arr)
    with np.errstate(divide='ignore'):
        out = np.log(_cdf_values(z1))
    lower = z1 < -TAIL_CUTOFF
    if np.any(lower):
        out[lower] = _log_upper_tail(-z1[lower])
    upper = z1 > TAIL_CUTOFF
    if np.any(upper):
        out[upper] = np.log1p(-_upper_tail(z1[upper]))
    out = out.reshape(np.shape(arr))
    return float(out) if scalar else out


def _rational_lower(p: np.ndarray) -> np.ndarray:
    """Initial quantile guess for 0 < p <= 0.5."""
    q_tail = np.sqrt(-2.0 * np.log(p))
    tail = (((((_C[0] * q_tail + _C[1]) * q_tail + _C[2]) * q_tail + _C[3]) * q_tail + _C[4]) * q_tail + _C[5]) / \
        ((((_D[0] * q_tail + _D[1]) * q_tail + _D[2]) * q_tail + _D[3]) * q_tail + 1.0)

    q = p - 0.5
    r = q * q
    central = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / \
        (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0)

    return np.where(p < _P_LOW, tail, central)


def quantile(p: ArrayLike) -> ArrayLike:
    """Inverse of `cdf` on the open interval (0, 1)."""
    arr, scalar = _as_array(p)
    if np.any(np.isnan(arr)) or np.any((arr < 0.0) | (arr > 1.0)):
        raise DomainError(f"quantile requires 0 < p < 1, got {p!r}")
    if np.any((arr == 0.0) | (arr == 1.0)):
        raise InfinityError(f"quantile is infinite at p={p!r}")

    # Work in the lower half; 1 - p is exact for p >= 0.5
    lower = np.minimum(arr, 1.0 - arr)
    x = _rational_lower(lower)

    # One Halley step against the tail-accurate cdf
    with np.errstate(over='ignore', invalid='ignore'):
        e = _cdf_values(x) - lower
        u = e * SQRT_2PI * np.exp(0.5 * x * x)
        refined = x - u / (1.0 + 0.5 * x * u)
    x = np.where(x > _REFINE_FLOOR, refined, x)

    out = np.where(arr > 0.5, -x, x)
    return float(out) if scalar else out
