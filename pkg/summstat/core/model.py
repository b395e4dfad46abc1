# stdlib
import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import (
    Callable,
    ClassVar,
    Dict,
    FrozenSet,
    List,
    NamedTuple,
    Optional,
    Tuple,
    Union,
)

# Local
from summstat.core.errors import DomainError, ValidationError


# -----------------------------------------------
# Scenarios and estimation methods
# -----------------------------------------------

class Scenario(Enum):
    C1 = 'C1'
    C2 = 'C2'
    C3 = 'C3'

    @property
    def fields(self) -> Tuple[str, ...]:
        fields = {
            self.C1: ('a', 'm', 'b'),
            self.C2: ('a', 'q1', 'm', 'q3', 'b'),
            self.C3: ('q1', 'm', 'q3'),
        }
        return fields[self]

    @property
    def description(self):
        descriptions = {
            self.C1: "minimum, median, maximum and sample size",
            self.C2: "full five-number summary and sample size",
            self.C3: "quartiles, median and sample size",
        }
        return descriptions[self]


class MethodId(Enum):
    MEAN_SIMPLE = 'mean_simple'
    MEAN_FULL = 'mean_full'
    SD_RANGE_RULE = 'sd_range_rule'
    SD_HOZO_ADAPTIVE = 'sd_hozo_adaptive'
    SD_HOZO_EXACT = 'sd_hozo_exact'
    SD_WAN_EXACT = 'sd_wan_exact'
    SD_WAN_BLOM = 'sd_wan_blom'
    SD_BLAND = 'sd_bland'
    SD_COCHRANE = 'sd_cochrane'

    @property
    def token(self) -> str:
        return self.value

    @property
    def is_mean(self) -> bool:
        return self in (self.MEAN_SIMPLE, self.MEAN_FULL)

    @property
    def scenarios(self) -> FrozenSet[Scenario]:
        scenarios = {
            self.MEAN_SIMPLE: (Scenario.C1, Scenario.C2, Scenario.C3),
            self.MEAN_FULL: (Scenario.C1, Scenario.C2),
            self.SD_RANGE_RULE: (Scenario.C1,),
            self.SD_HOZO_ADAPTIVE: (Scenario.C1,),
            self.SD_HOZO_EXACT: (Scenario.C1,),
            self.SD_WAN_EXACT: (Scenario.C1, Scenario.C2, Scenario.C3),
            self.SD_WAN_BLOM: (Scenario.C1, Scenario.C2, Scenario.C3),
            self.SD_BLAND: (Scenario.C2,),
            self.SD_COCHRANE: (Scenario.C3,),
        }
        return frozenset(scenarios[self])

    @property
    def description(self):
        descriptions = {
            self.MEAN_SIMPLE: "Large-sample mean from the reported quantiles",
            self.MEAN_FULL: "Midpoint of the inequality bounds on the mean, with 1/n correction",
            self.SD_RANGE_RULE: "Range rule of thumb, (b-a)/4",
            self.SD_HOZO_ADAPTIVE: "Hozo adaptive range rule (sqrt(12), 4 or 6 by sample size)",
            self.SD_HOZO_EXACT: "Hozo inequality-bound variance (non-negative data)",
            self.SD_WAN_EXACT: "Range and/or IQR over exact expected normal order statistics",
            self.SD_WAN_BLOM: "Range and/or IQR over Blom-approximated normal order statistics",
            self.SD_BLAND: "Bland inequality-bound variance from the five-number summary",
            self.SD_COCHRANE: "Cochrane Handbook rule, IQR/1.35",
        }
        return descriptions[self]


class Flag(Enum):
    SD_CLAMPED_TO_ZERO = 'SD_CLAMPED_TO_ZERO'
    BLOM_APPROXIMATION_USED = 'BLOM_APPROXIMATION_USED'
    ETA_FALLBACK_USED = 'ETA_FALLBACK_USED'


# -----------------------------------------------
# Reported summary statistics
# -----------------------------------------------

def _check_sample_size(n):
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValidationError(f"Sample size must be an integer, got {n!r}")
    if n < 1:
        raise ValidationError(f"Sample size must be at least 1, got {n}")


def _check_ordering(names: Tuple[str, ...], values: Tuple[float, ...]):
    for name, value in zip(names, values):
        if not math.isfinite(value):
            raise ValidationError(f"{name} must be a finite number, got {value!r}")
    for i in range(len(values) - 1):
        if values[i] > values[i + 1]:
            raise ValidationError(
                f"Ordering violation: {names[i]}={values[i]} > {names[i + 1]}={values[i + 1]}"
            )


@dataclass(frozen=True)
class C1Input:
    a: float
    m: float
    b: float
    n: int

    scenario: ClassVar[Scenario] = Scenario.C1

    def __post_init__(self):
        _check_sample_size(self.n)
        _check_ordering(('a', 'm', 'b'), (self.a, self.m, self.b))


@dataclass(frozen=True)
class C2Input:
    a: float
    q1: float
    m: float
    q3: float
    b: float
    n: int

    scenario: ClassVar[Scenario] = Scenario.C2

    def __post_init__(self):
        _check_sample_size(self.n)
        _check_ordering(
            ('a', 'q1', 'm', 'q3', 'b'),
            (self.a, self.q1, self.m, self.q3, self.b)
        )


@dataclass(frozen=True)
class C3Input:
    q1: float
    m: float
    q3: float
    n: int

    scenario: ClassVar[Scenario] = Scenario.C3

    def __post_init__(self):
        _check_sample_size(self.n)
        _check_ordering(('q1', 'm', 'q3'), (self.q1, self.m, self.q3))


ScenarioInput = Union[C1Input, C2Input, C3Input]


@dataclass(frozen=True)
class Estimate:
    scenario: Scenario
    mean: Optional[float]
    sd: Optional[float]
    mean_method: Optional[MethodId]
    sd_method: Optional[MethodId]
    flags: FrozenSet[Flag] = frozenset()

    def __post_init__(self):
        if self.sd is not None and not self.sd >= 0:
            raise DomainError(f"Standard deviation estimate must be non-negative, got {self.sd}")

    def to_dict(self):
        ret = asdict(self)
        ret['scenario'] = self.scenario.value
        ret['mean_method'] = self.mean_method.token if self.mean_method else None
        ret['sd_method'] = self.sd_method.token if self.sd_method else None
        ret['flags'] = sorted(f.value for f in self.flags)
        return ret


# -----------------------------------------------
# Order statistics
# -----------------------------------------------

@dataclass(frozen=True)
class OrderStatQuery:
    n: int
    r: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"Sample size must be a positive integer, got {self.n!r}")
        if isinstance(self.r, bool) or not isinstance(self.r, int) or not 1 <= self.r <= self.n:
            raise DomainError(f"Rank must satisfy 1 <= r <= n={self.n}, got {self.r!r}")


class ScalingKind(Enum):
    XI = 'xi'
    ETA = 'eta'

    @property
    def index_name(self):
        # xi is tabulated by sample size, eta by Q where n = 4Q+1
        return 'n' if self == ScalingKind.XI else 'Q'


@dataclass
class ScalingTable:
    kind: ScalingKind
    entries: List[Tuple[int, float]]
    approximation: str = 'exact'

    def values(self) -> Dict[int, float]:
        return dict(self.entries)


# -----------------------------------------------
# Simulation models
# -----------------------------------------------

def _check_positive(dist_name: str, **params):
    for name, value in params.items():
        if not (math.isfinite(value) and value > 0):
            raise DomainError(f"{dist_name} parameter {name} must be positive, got {value!r}")


@dataclass(frozen=True)
class Normal:
    mu: float
    sigma: float

    family: ClassVar[str] = 'normal'

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise DomainError(f"normal parameter mu must be finite, got {self.mu!r}")
        _check_positive(self.family, sigma=self.sigma)

    @property
    def tag(self) -> str:
        return f"normal({self.mu:g},{self.sigma:g})"


@dataclass(frozen=True)
class LogNormal:
    mu: float
    sigma: float

    family: ClassVar[str] = 'lognormal'

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise DomainError(f"lognormal parameter mu must be finite, got {self.mu!r}")
        _check_positive(self.family, sigma=self.sigma)

    @property
    def tag(self) -> str:
        return f"lognormal({self.mu:g},{self.sigma:g})"


@dataclass(frozen=True)
class Beta:
    alpha: float
    beta: float

    family: ClassVar[str] = 'beta'

    def __post_init__(self):
        _check_positive(self.family, alpha=self.alpha, beta=self.beta)

    @property
    def tag(self) -> str:
        return f"beta({self.alpha:g},{self.beta:g})"


@dataclass(frozen=True)
class Exponential:
    rate: float

    family: ClassVar[str] = 'exponential'

    def __post_init__(self):
        _check_positive(self.family, rate=self.rate)

    @property
    def tag(self) -> str:
        return f"exponential({self.rate:g})"


@dataclass(frozen=True)
class Weibull:
    k: float
    scale: float

    family: ClassVar[str] = 'weibull'

    def __post_init__(self):
        _check_positive(self.family, k=self.k, scale=self.scale)

    @property
    def tag(self) -> str:
        return f"weibull({self.k:g},{self.scale:g})"


DistributionSpec = Union[Normal, LogNormal, Beta, Exponential, Weibull]
DISTRIBUTION_FAMILIES = {cls.family: cls for cls in (Normal, LogNormal, Beta, Exponential, Weibull)}


@dataclass
class SimulationConfig:
    dist: DistributionSpec
    n_grid: Tuple[int, ...]
    reps: int
    master_seed: int
    scenarios: Tuple[Scenario, ...]
    sd_methods: Dict[Scenario, Tuple[MethodId, ...]]
    mean_methods: Dict[Scenario, MethodId] = field(default_factory=dict)


class SeedLineage(NamedTuple):
    master_seed: int
    dist_tag: str
    n: int
    rep_indices: Tuple[int, ...]

    def __str__(self):
        if len(self.rep_indices) == 0:
            reps = "none"
        elif list(self.rep_indices) == list(range(self.rep_indices[0], self.rep_indices[-1] + 1)):
            reps = f"{self.rep_indices[0]}-{self.rep_indices[-1]}"
        else:
            reps = ",".join(str(i) for i in self.rep_indices)
        return f"seed={self.master_seed}/dist={self.dist_tag}/n={self.n}/reps={reps}"


@dataclass(frozen=True)
class SimulationCell:
    dist: str
    n: int
    scenario: Scenario
    method: MethodId
    mean_method: MethodId
    avg_rel_err_mean: float
    avg_rel_err_sd: float
    reps: int
    seed_lineage: SeedLineage
    se_rel_err_mean: float = 0.0
    se_rel_err_sd: float = 0.0
    discarded: int = 0


# -----------------------------------------------
# Batch records
# -----------------------------------------------

@dataclass
class StudyRecord:
    line_no: int
    study_id: str
    n: int
    min: Optional[float] = None
    q1: Optional[float] = None
    median: Optional[float] = None
    q3: Optional[float] = None
    max: Optional[float] = None
    mean_method: Optional[MethodId] = None
    sd_method: Optional[MethodId] = None
    raw: Dict[str, str] = field(default_factory=dict)

    def present_fields(self) -> FrozenSet[str]:
        return frozenset(
            name for name in ('min', 'q1', 'median', 'q3', 'max')
            if getattr(self, name) is not None
        )


@dataclass
class EnrichedRecord:
    record: StudyRecord
    estimate: Estimate

    @property
    def scenario(self) -> Scenario:
        return self.estimate.scenario

    @property
    def est_mean(self) -> Optional[float]:
        return self.estimate.mean

    @property
    def est_sd(self) -> Optional[float]:
        return self.estimate.sd

    @property
    def mean_method_used(self) -> str:
        return self.estimate.mean_method.token if self.estimate.mean_method else ''

    @property
    def sd_method_used(self) -> str:
        return self.estimate.sd_method.token if self.estimate.sd_method else ''

    @property
    def flags(self) -> List[str]:
        return sorted(f.value for f in self.estimate.flags)


class BatchSummary(NamedTuple):
    processed: int
    enriched: int
    rejected: int

    def __str__(self):
        return f"processed={self.processed} enriched={self.enriched} rejected={self.rejected}"


# -----------------------------------------------
# Convenience structs and aliases
# -----------------------------------------------

class CommandConfig(NamedTuple):
    func: Callable
    help: str
    decorators: List[Callable] = []
    # e.g.
    # [
    #     click.option(...),
    #     click.option(...),
    #     click.pass_context,
    #     ...
    # ]


class SampleSummary(NamedTuple):
    """Order-statistic summaries and true moments of one simulated sample."""
    n: int
    a: float
    q1: Optional[float]
    m: float
    q3: Optional[float]
    b: float
    true_mean: float
    true_sd: float

    def to_input(self, scenario: Scenario) -> 'ScenarioInput':
        # Each scenario sees only the fields it reports
        if scenario == Scenario.C1:
            return C1Input(self.a, self.m, self.b, self.n)
        if self.q1 is None or self.q3 is None:
            raise DomainError(f"Scenario {scenario.value} needs quartiles, which need n = 4Q+1 (n={self.n})")
        if scenario == Scenario.C2:
            return C2Input(self.a, self.q1, self.m, self.q3, self.b, self.n)
        return C3Input(self.q1, self.m, self.q3, self.n)
