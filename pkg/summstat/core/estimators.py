"""
Mean and standard-deviation estimators for studies that report only summary
statistics, under the three reporting scenarios:

    C1  {a, m, b; n}           minimum, median, maximum
    C2  {a, q1, m, q3, b; n}   five-number summary
    C3  {q1, m, q3; n}         quartiles and median

Each public `sd_*` returns a plain float. `estimate` is the uniform dispatch and
also reports the flags raised along the way (clamping, Blom approximation,
eta fallback).
"""

# stdlib
import math
import logging
from typing import Callable, Dict, FrozenSet, Optional, Set, Tuple, Union

# Local
from summstat.core.errors import DispatchError, DomainError, ValidationError
from summstat.core.model import (
    C1Input,
    C2Input,
    C3Input,
    Estimate,
    Flag,
    MethodId,
    Scenario,
    ScenarioInput,
)
from summstat.core.constants import (
    COCHRANE_DIVISOR,
    HOZO_SMALL_N_MAX,
    HOZO_MEDIUM_N_MAX,
    DEFAULT_MEAN_METHODS,
    DEFAULT_SD_METHODS,
    SCENARIO_TO_METHODS_MAP,
)
from summstat.core import order_stats

LOG = logging.getLogger(__name__)

SdResult = Tuple[float, FrozenSet[Flag]]
MethodLike = Union[MethodId, str]


# -----------------------------------------------
# Helpers
# -----------------------------------------------

def _require(input, cls):
    if not isinstance(input, cls):
        raise ValidationError(f"Expected a {cls.__name__}, got {type(input).__name__}")


def _require_sd_sample_size(n: int, method: MethodId):
    if n < 2:
        raise DomainError(f"{method.token} needs a sample size of at least 2, got n={n}")


def _resolve_method(method: MethodLike, scenario: Scenario, want_mean: bool) -> MethodId:
    allowed = [m for m in SCENARIO_TO_METHODS_MAP[scenario] if m.is_mean == want_mean]
    kind = "mean" if want_mean else "SD"
    if isinstance(method, str) and method.strip().lower() in ('simple', 'full'):
        method = f"mean_{method.strip().lower()}"
    try:
        resolved = MethodId.to_enum(method)
    except ValueError:
        raise DispatchError(
            f"Unknown {kind} method {method!r} for {scenario.value}; "
            f"allowed: {', '.join(m.token for m in allowed)}",
            allowed=allowed,
        )
    if resolved not in allowed:
        raise DispatchError(
            f"{resolved.token} is not a {kind} method for scenario {scenario.value}; "
            f"allowed: {', '.join(m.token for m in allowed)}",
            allowed=allowed,
        )
    return resolved


def _clamped_sqrt(variance: float, method: MethodId) -> SdResult:
    if variance < 0:
        LOG.debug(f"{method.token}: negative variance {variance:.6g} clamped to zero")
        return 0.0, frozenset({Flag.SD_CLAMPED_TO_ZERO})
    return math.sqrt(variance), frozenset()


def _eta_or_fallback(n: int) -> Tuple[float, FrozenSet[Flag]]:
    if order_stats.is_quartile_size(n):
        return order_stats.eta(n), frozenset()
    LOG.debug(f"n={n} is not of the form 4Q+1; using the Blom IQR divisor")
    return order_stats.blom_eta(n), frozenset({Flag.ETA_FALLBACK_USED})


# -----------------------------------------------
# Scenario C1: {a, m, b; n}
# -----------------------------------------------

def mean_c1(input: C1Input, variant: MethodLike = MethodId.MEAN_SIMPLE) -> float:
    _require(input, C1Input)
    method = _resolve_method(variant, Scenario.C1, want_mean=True)
    a, m, b, n = input.a, input.m, input.b, input.n
    simple = (a + 2 * m + b) / 4
    if method == MethodId.MEAN_SIMPLE:
        return simple
    # Midpoint of the lower and upper bounds on the sample mean
    return simple + (a - 2 * m + b) / (4 * n)


def _sd_c1_range_rule(input: C1Input) -> SdResult:
    return (input.b - input.a) / 4, frozenset()


def _sd_c1_hozo_adaptive(input: C1Input) -> SdResult:
    a, m, b, n = input.a, input.m, input.b, input.n
    if n <= HOZO_SMALL_N_MAX:
        return math.sqrt((b - a) ** 2 + (a - 2 * m + b) ** 2 / 4) / math.sqrt(12), frozenset()
    if n <= HOZO_MEDIUM_N_MAX:
        return (b - a) / 4, frozenset()
    return (b - a) / 6, frozenset()


def _sd_c1_hozo_exact(input: C1Input) -> SdResult:
    # Derived for non-negative data; computed regardless so it can be compared
    a, m, b, n = input.a, input.m, input.b, input.n
    variance = (
        a ** 2 + m ** 2 + b ** 2
        + (n - 3) / 2 * ((a + m) ** 2 + (m + b) ** 2) / 4
        - n * (a + 2 * m + b) ** 2 / 16
    ) / (n - 1)
    return _clamped_sqrt(variance, MethodId.SD_HOZO_EXACT)


def _sd_c1_wan_exact(input: C1Input) -> SdResult:
    return (input.b - input.a) / order_stats.xi(input.n), frozenset()


def _sd_c1_wan_blom(input: C1Input) -> SdResult:
    return (input.b - input.a) / order_stats.blom_xi(input.n), frozenset({Flag.BLOM_APPROXIMATION_USED})


_C1_SD: Dict[MethodId, Callable[[C1Input], SdResult]] = {
    MethodId.SD_RANGE_RULE: _sd_c1_range_rule,
    MethodId.SD_HOZO_ADAPTIVE: _sd_c1_hozo_adaptive,
    MethodId.SD_HOZO_EXACT: _sd_c1_hozo_exact,
    MethodId.SD_WAN_EXACT: _sd_c1_wan_exact,
    MethodId.SD_WAN_BLOM: _sd_c1_wan_blom,
}


def sd_c1_with_flags(input: C1Input, method: MethodLike) -> SdResult:
    _require(input, C1Input)
    method = _resolve_method(method, Scenario.C1, want_mean=False)
    _require_sd_sample_size(input.n, method)
    return _C1_SD[method](input)


def sd_c1(input: C1Input, method: MethodLike = MethodId.SD_WAN_BLOM) -> float:
    return sd_c1_with_flags(input, method)[0]


# -----------------------------------------------
# Scenario C2: {a, q1, m, q3, b; n}
# -----------------------------------------------

def mean_c2(input: C2Input, variant: MethodLike = MethodId.MEAN_SIMPLE) -> float:
    _require(input, C2Input)
    method = _resolve_method(variant, Scenario.C2, want_mean=True)
    a, q1, m, q3, b, n = input.a, input.q1, input.m, input.q3, input.b, input.n
    if method == MethodId.MEAN_SIMPLE:
        return (a + 2 * q1 + 2 * m + 2 * q3 + b) / 8
    inner = q1 + m + q3
    lower = (a + inner) / 4 + (4 * b - a - inner) / (4 * n)
    upper = (inner + b) / 4 + (4 * a - inner - b) / (4 * n)
    return (lower + upper) / 2


def _sd_c2_bland(input: C2Input) -> SdResult:
    a, q1, m, q3, b = input.a, input.q1, input.m, input.q3, input.b
    variance = (
        (a ** 2 + 2 * q1 ** 2 + 2 * m ** 2 + 2 * q3 ** 2 + b ** 2) / 16
        + (a * q1 + q1 * m + m * q3 + q3 * b) / 8
        - (a + 2 * q1 + 2 * m + 2 * q3 + b) ** 2 / 64
    )
    return _clamped_sqrt(variance, MethodId.SD_BLAND)


def _sd_c2_wan_exact(input: C2Input) -> SdResult:
    eta, flags = _eta_or_fallback(input.n)
    sd = (input.b - input.a) / (2 * order_stats.xi(input.n)) + (input.q3 - input.q1) / (2 * eta)
    return sd, flags


def _sd_c2_wan_blom(input: C2Input) -> SdResult:
    sd = (
        (input.b - input.a) / (2 * order_stats.blom_xi(input.n))
        + (input.q3 - input.q1) / (2 * order_stats.blom_eta(input.n))
    )
    return sd, frozenset({Flag.BLOM_APPROXIMATION_USED})


_C2_SD: Dict[MethodId, Callable[[C2Input], SdResult]] = {
    MethodId.SD_BLAND: _sd_c2_bland,
    MethodId.SD_WAN_EXACT: _sd_c2_wan_exact,
    MethodId.SD_WAN_BLOM: _sd_c2_wan_blom,
}


def sd_c2_with_flags(input: C2Input, method: MethodLike) -> SdResult:
    _require(input, C2Input)
    method = _resolve_method(method, Scenario.C2, want_mean=False)
    _require_sd_sample_size(input.n, method)
    return _C2_SD[method](input)


def sd_c2(input: C2Input, method: MethodLike = MethodId.SD_WAN_BLOM) -> float:
    return sd_c2_with_flags(input, method)[0]


# -----------------------------------------------
# Scenario C3: {q1, m, q3; n}
# -----------------------------------------------

def mean_c3(input: C3Input) -> float:
    _require(input, C3Input)
    return (input.q1 + input.m + input.q3) / 3


def _sd_c3_wan_exact(input: C3Input) -> SdResult:
    eta, flags = _eta_or_fallback(input.n)
    return (input.q3 - input.q1) / eta, flags


def _sd_c3_wan_blom(input: C3Input) -> SdResult:
    return (input.q3 - input.q1) / order_stats.blom_eta(input.n), frozenset({Flag.BLOM_APPROXIMATION_USED})


def _sd_c3_cochrane(input: C3Input) -> SdResult:
    return (input.q3 - input.q1) / COCHRANE_DIVISOR, frozenset()


_C3_SD: Dict[MethodId, Callable[[C3Input], SdResult]] = {
    MethodId.SD_WAN_EXACT: _sd_c3_wan_exact,
    MethodId.SD_WAN_BLOM: _sd_c3_wan_blom,
    MethodId.SD_COCHRANE: _sd_c3_cochrane,
}


def sd_c3_with_flags(input: C3Input, method: MethodLike) -> SdResult:
    _require(input, C3Input)
    method = _resolve_method(method, Scenario.C3, want_mean=False)
    if method != MethodId.SD_COCHRANE:
        _require_sd_sample_size(input.n, method)
    return _C3_SD[method](input)


def sd_c3(input: C3Input, method: MethodLike = MethodId.SD_WAN_BLOM) -> float:
    return sd_c3_with_flags(input, method)[0]


# -----------------------------------------------
# Dispatch
# -----------------------------------------------

def _mean(input: ScenarioInput, method: MethodId) -> float:
    if isinstance(input, C1Input):
        return mean_c1(input, method)
    if isinstance(input, C2Input):
        return mean_c2(input, method)
    return mean_c3(input)


_SD_DISPATCH = {
    Scenario.C1: sd_c1_with_flags,
    Scenario.C2: sd_c2_with_flags,
    Scenario.C3: sd_c3_with_flags,
}


def estimate(
    input: ScenarioInput,
    mean_method: Optional[MethodLike] = None,
    sd_method: Optional[MethodLike] = None,
) -> Estimate:
    """
    Estimate mean and SD for any scenario input.

    Unspecified methods default to the recommended ones for the scenario. With the
    default SD method and n = 1 the SD is left absent; an explicitly requested SD
    method with n < 2 raises DomainError.
    """
    if not isinstance(input, (C1Input, C2Input, C3Input)):
        raise ValidationError(f"Unsupported input type {type(input).__name__}")
    scenario = input.scenario

    mean_method = _resolve_method(
        DEFAULT_MEAN_METHODS[scenario] if mean_method is None else mean_method,
        scenario,
        want_mean=True,
    )
    mean = _mean(input, mean_method)

    flags: Set[Flag] = set()
    sd = None
    if sd_method is None and input.n < 2:
        LOG.debug(f"n={input.n}: no SD estimate without an explicit method")
        resolved_sd = None
    else:
        resolved_sd = _resolve_method(
            DEFAULT_SD_METHODS[scenario] if sd_method is None else sd_method,
            scenario,
            want_mean=False,
        )
        sd, sd_flags = _SD_DISPATCH[scenario](input, resolved_sd)
        flags |= sd_flags

    return Estimate(
        scenario=scenario,
        mean=mean,
        sd=sd,
        mean_method=mean_method,
        sd_method=resolved_sd,
        flags=frozenset(flags),
    )
