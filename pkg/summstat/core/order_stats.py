"""
Expected values of standard-normal order statistics.

E(Z(r)) for a sample of size n is

    n! / ((r-1)! (n-r)!)  *  integral of z * cdf(z)^(r-1) * (1 - cdf(z))^(n-r) * pdf(z) dz

evaluated here by adaptive Gauss-Legendre quadrature with the whole integrand
assembled in log space, so large n and central ranks do not overflow. Blom's
closed form quantile((r - alpha) / (n - 2*alpha + 1)) is provided alongside.

xi(n)  = 2 E(Z(n))     expected range of n standard-normal draws
eta(n) = 2 E(Z(3Q+1))  expected IQR for n = 4Q+1
"""

# stdlib
import math
import logging
import functools
from typing import Callable, NamedTuple, Optional

# 3rd-party
import numpy as np
import pandas as pd
from scipy.special import gammaln

# Local
from summstat.utils import format_fixed
from summstat.core.config import SS_CONFIG
from summstat.core.errors import DomainError, NumericalError
from summstat.core.model import OrderStatQuery, ScalingKind, ScalingTable
from summstat.core.normal_math import LOG_SQRT_2PI, log_cdf, quantile

LOG = logging.getLogger(__name__)

_GL_HIGH_NODES, _GL_HIGH_WEIGHTS = np.polynomial.legendre.leggauss(20)
_GL_LOW_NODES, _GL_LOW_WEIGHTS = np.polynomial.legendre.leggauss(10)
INITIAL_PANELS = 16
MAX_PANELS = 4096


class QuadratureResult(NamedTuple):
    value: float
    error: float
    panels: int


def _gauss_legendre_pair(func: Callable, a: float, b: float):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    high = half * float(np.dot(_GL_HIGH_WEIGHTS, func(mid + half * _GL_HIGH_NODES)))
    low = half * float(np.dot(_GL_LOW_WEIGHTS, func(mid + half * _GL_LOW_NODES)))
    return high, low


def integrate(
    func: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    tol: Optional[float] = None,
    max_panels: int = MAX_PANELS,
) -> QuadratureResult:
    """
    Adaptive composite Gauss-Legendre quadrature of a vectorised integrand.

    Each panel is integrated with 20- and 10-point rules; their difference is the
    panel's error estimate. Panels whose estimate exceeds their share of `tol`
    (proportional to width) are bisected. Raises NumericalError once `max_panels`
    panels have been evaluated without meeting the tolerance.
    """
    if tol is None:
        tol = SS_CONFIG.quad_tolerance
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 0)
    if hi < lo:
        result = integrate(func, hi, lo, tol, max_panels)
        return QuadratureResult(-result.value, result.error, result.panels)

    width = hi - lo
    edges = np.linspace(lo, hi, INITIAL_PANELS + 1)
    stack = list(zip(edges[:-1], edges[1:]))
    accepted_values = []
    total_error = 0.0
    evaluated = 0

    while stack:
        a, b = stack.pop()
        high, low = _gauss_legendre_pair(func, a, b)
        err = abs(high - low)
        evaluated += 1
        if err <= tol * (b - a) / width:
            accepted_values.append(high)
            total_error += err
        elif evaluated >= max_panels:
            achieved = total_error + err
            raise NumericalError(
                f"Quadrature on [{lo}, {hi}] did not reach tolerance {tol:g} "
                f"within {max_panels} panels (achieved error estimate {achieved:.3g})",
                achieved_error=achieved,
            )
        else:
            mid = 0.5 * (a + b)
            stack.append((mid, b))
            stack.append((a, mid))

    return QuadratureResult(math.fsum(accepted_values), total_error, len(accepted_values))


def _domain_half_width(n: int) -> float:
    # The integrand's mass drifts outward like sqrt(2 ln n)
    return 8.0 + math.sqrt(2.0 * math.log(n))


def expected_order_stat(q: OrderStatQuery, tol: Optional[float] = None) -> float:
    n, r = q.n, q.r
    if 2 * r == n + 1:
        # Median of an odd sample is exactly zero by symmetry
        return 0.0

    log_coef = float(gammaln(n + 1) - gammaln(r) - gammaln(n - r + 1))

    def integrand(z: np.ndarray) -> np.ndarray:
        log_density = (
            log_coef
            + (r - 1) * log_cdf(z)
            + (n - r) * log_cdf(-z)
            - 0.5 * z * z
            - LOG_SQRT_2PI
        )
        return z * np.exp(log_density)

    half_width = _domain_half_width(n)
    result = integrate(integrand, -half_width, half_width, tol)
    LOG.debug(
        f"E(Z({r})) for n={n}: {result.value:.10f} "
        f"(error estimate {result.error:.2e}, {result.panels} panels)"
    )
    return result.value


@functools.lru_cache(maxsize=None)
def _xi_cached(n: int, tol: float) -> float:
    LOG.debug(f"Computing xi({n})")
    return 2.0 * expected_order_stat(OrderStatQuery(n, n), tol)


@functools.lru_cache(maxsize=None)
def _eta_cached(n: int, tol: float) -> float:
    LOG.debug(f"Computing eta({n})")
    q = (n - 1) // 4
    return 2.0 * expected_order_stat(OrderStatQuery(n, 3 * q + 1), tol)


def xi(n: int) -> float:
    """Expected range of n standard-normal draws, by quadrature."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"xi requires a positive integer sample size, got {n!r}")
    if n == 1:
        return 0.0
    return _xi_cached(n, SS_CONFIG.quad_tolerance)


def is_quartile_size(n: int) -> bool:
    """True when n = 4Q+1 for some integer Q >= 1."""
    return isinstance(n, int) and not isinstance(n, bool) and n >= 5 and (n - 1) % 4 == 0


def eta(n: int) -> float:
    """Expected IQR of n = 4Q+1 standard-normal draws, by quadrature."""
    if not is_quartile_size(n):
        raise DomainError(f"eta requires n = 4Q+1 with Q >= 1, got {n!r}; use blom_eta for other n")
    return _eta_cached(n, SS_CONFIG.quad_tolerance)


def _resolve_alpha(alpha: Optional[float]) -> float:
    if alpha is None:
        alpha = SS_CONFIG.blom_alpha
    if not 0.0 <= alpha < 0.5:
        raise DomainError(f"Blom alpha must lie in [0, 0.5), got {alpha!r}")
    return alpha


def blom(q: OrderStatQuery, alpha: Optional[float] = None) -> float:
    alpha = _resolve_alpha(alpha)
    return quantile((q.r - alpha) / (q.n - 2.0 * alpha + 1.0))


@functools.lru_cache(maxsize=None)
def _blom_xi_cached(n: int, alpha: float) -> float:
    return 2.0 * quantile((n - alpha) / (n - 2.0 * alpha + 1.0))


@functools.lru_cache(maxsize=None)
def _blom_eta_cached(n: int, alpha: float) -> float:
    # Rank 3Q+1 = (3n+1)/4, extended to every n
    return 2.0 * quantile(((3.0 * n + 1.0) / 4.0 - alpha) / (n - 2.0 * alpha + 1.0))


def _check_blom_size(name: str, n: int):
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"{name} requires an integer sample size n >= 2, got {n!r}")


def blom_xi(n: int, alpha: Optional[float] = None) -> float:
    _check_blom_size("blom_xi", n)
    return _blom_xi_cached(n, _resolve_alpha(alpha))


def blom_eta(n: int, alpha: Optional[float] = None) -> float:
    _check_blom_size("blom_eta", n)
    return _blom_eta_cached(n, _resolve_alpha(alpha))


def blom_xi_threshold(target: float, alpha: Optional[float] = None) -> int:
    """Smallest n >= 2 with blom_xi(n) >= target."""
    if not math.isfinite(target):
        raise DomainError(f"target must be finite, got {target!r}")
    lo = 2
    if blom_xi(lo, alpha) >= target:
        return lo
    hi = 4
    while blom_xi(hi, alpha) < target:
        lo, hi = hi, hi * 2
        if hi > 2 ** 52:
            raise DomainError(f"blom_xi never reaches {target} in double precision")
    # Invariant: blom_xi(lo) < target <= blom_xi(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if blom_xi(mid, alpha) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def generate_table(kind: ScalingKind, max_index: int, approximation: str = "exact") -> ScalingTable:
    if isinstance(max_index, bool) or not isinstance(max_index, int) or max_index < 1:
        raise DomainError(f"max_index must be a positive integer, got {max_index!r}")
    if approximation not in ("exact", "blom"):
        raise DomainError(f"approximation must be 'exact' or 'blom', got {approximation!r}")

    entries = []
    for index in range(1, max_index + 1):
        if kind == ScalingKind.XI:
            if index == 1:
                value = 0.0
            elif approximation == "exact":
                value = xi(index)
            else:
                value = blom_xi(index)
        else:
            n = 4 * index + 1
            value = eta(n) if approximation == "exact" else blom_eta(n)
        entries.append((index, value))

    LOG.debug(f"Generated {kind.value} table ({approximation}) up to {max_index}")
    return ScalingTable(kind, entries, approximation)


def table_csv(table: ScalingTable) -> str:
    """CSV text with header `index,value`, values rounded half away from zero to 3 decimals."""
    frame = pd.DataFrame(
        [(index, format_fixed(value, 3)) for index, value in table.entries],
        columns=["index", "value"],
    )
    return frame.to_csv(index=False, lineterminator="\n")
