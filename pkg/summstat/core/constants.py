# stdlib
from typing import Dict, List, NamedTuple, Tuple

# Local
from .model import (
    Scenario,
    MethodId,
    DistributionSpec,
    Normal,
    LogNormal,
    Beta,
    Exponential,
    Weibull,
)

# -----------------------------------------
# Estimation constants
# -----------------------------------------

BLOM_ALPHA = 0.375
COCHRANE_DIVISOR = 1.35

# Hozo adaptive rule: sqrt(12) divisor up to 15, (b-a)/4 up to 70, (b-a)/6 beyond
HOZO_SMALL_N_MAX = 15
HOZO_MEDIUM_N_MAX = 70

# -----------------------------------------
# Method dispatch
# -----------------------------------------

# Recommended methods for each scenario
DEFAULT_MEAN_METHODS: Dict[Scenario, MethodId] = {
    Scenario.C1: MethodId.MEAN_SIMPLE,
    Scenario.C2: MethodId.MEAN_SIMPLE,
    Scenario.C3: MethodId.MEAN_SIMPLE,
}

DEFAULT_SD_METHODS: Dict[Scenario, MethodId] = {
    Scenario.C1: MethodId.SD_WAN_BLOM,
    Scenario.C2: MethodId.SD_WAN_BLOM,
    Scenario.C3: MethodId.SD_WAN_BLOM,
}

SCENARIO_TO_METHODS_MAP: Dict[Scenario, List[MethodId]] = {
    scenario: [m for m in MethodId if scenario in m.scenarios]
    for scenario in Scenario
}

# -----------------------------------------
# Simulation distributions
# -----------------------------------------

NORMAL_50_17 = Normal(mu=50, sigma=17)
LOGNORMAL_4_03 = LogNormal(mu=4, sigma=0.3)
BETA_9_4 = Beta(alpha=9, beta=4)
EXPONENTIAL_10 = Exponential(rate=10)
WEIBULL_2_35 = Weibull(k=2, scale=35)

SKEWED_DISTRIBUTIONS = [
    LOGNORMAL_4_03,
    BETA_9_4,
    EXPONENTIAL_10,
    WEIBULL_2_35,
]

ALL_STUDY_DISTRIBUTIONS = [NORMAL_50_17] + SKEWED_DISTRIBUTIONS

NORMAL_5_1 = Normal(mu=5, sigma=1)
LOGNORMAL_5_025 = LogNormal(mu=5, sigma=0.25)
LOGNORMAL_5_05 = LogNormal(mu=5, sigma=0.5)
LOGNORMAL_5_1 = LogNormal(mu=5, sigma=1)

QUARTILE_STUDY_DISTRIBUTIONS = [
    NORMAL_5_1,
    LOGNORMAL_5_025,
    LOGNORMAL_5_05,
    LOGNORMAL_5_1,
]


def quartile_grid(q_max: int) -> Tuple[int, ...]:
    """Sample sizes n = 4Q+1 for Q = 1..q_max."""
    return tuple(4 * q + 1 for q in range(1, q_max + 1))


# -----------------------------------------
# Study presets
# -----------------------------------------

class StudyPreset(NamedTuple):
    name: str
    help: str
    distributions: List[DistributionSpec]
    q_max: int
    scenarios: Tuple[Scenario, ...]
    sd_methods: Dict[Scenario, Tuple[MethodId, ...]]


STUDY_PRESETS: Dict[str, StudyPreset] = {
    'c1-normal': StudyPreset(
        'c1-normal',
        'Range-based SD estimators on normal data, n = 5..1001',
        [NORMAL_50_17],
        250,
        (Scenario.C1,),
        {Scenario.C1: (
            MethodId.SD_RANGE_RULE,
            MethodId.SD_HOZO_ADAPTIVE,
            MethodId.SD_WAN_EXACT,
            MethodId.SD_WAN_BLOM,
        )},
    ),
    'c1-skewed': StudyPreset(
        'c1-skewed',
        'Range-based SD estimators on four skewed distributions, n = 5..101',
        SKEWED_DISTRIBUTIONS,
        25,
        (Scenario.C1,),
        {Scenario.C1: (
            MethodId.SD_RANGE_RULE,
            MethodId.SD_HOZO_ADAPTIVE,
            MethodId.SD_WAN_BLOM,
        )},
    ),
    'c2': StudyPreset(
        'c2',
        'Five-number-summary SD estimators on normal and log-normal data, n = 5..201',
        QUARTILE_STUDY_DISTRIBUTIONS,
        50,
        (Scenario.C2,),
        {Scenario.C2: (
            MethodId.SD_BLAND,
            MethodId.SD_WAN_EXACT,
            MethodId.SD_WAN_BLOM,
        )},
    ),
    'c3': StudyPreset(
        'c3',
        'Scenario comparison of mean and SD estimators on all five distributions, n = 5..201',
        ALL_STUDY_DISTRIBUTIONS,
        50,
        (Scenario.C1, Scenario.C2, Scenario.C3),
        {
            Scenario.C1: (MethodId.SD_WAN_BLOM,),
            Scenario.C2: (MethodId.SD_WAN_BLOM,),
            Scenario.C3: (MethodId.SD_WAN_EXACT, MethodId.SD_WAN_BLOM),
        },
    ),
}
