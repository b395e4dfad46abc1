"""
Monte Carlo harness for the relative-error studies.

For every n in a grid, each replication draws one sample, summarises it, and
scores every requested (scenario, SD method) pair on that same sample. A
replication whose true mean or true SD is zero is discarded and replaced by the
next replication index, so each cell averages exactly `reps` successes.
"""

# stdlib
import math
import logging
import functools
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

# 3rd-party
import numpy as np
import pandas as pd

# Local
from summstat import SIMULATION_LOG
from summstat.core.config import SS_CONFIG
from summstat.core.errors import ConfigurationError, DomainError, NumericalError, ZeroTruthError
from summstat.core.model import (
    DISTRIBUTION_FAMILIES,
    DistributionSpec,
    MethodId,
    SampleSummary,
    Scenario,
    SeedLineage,
    SimulationCell,
    SimulationConfig,
)
from summstat.core.constants import DEFAULT_MEAN_METHODS, STUDY_PRESETS, quartile_grid
from summstat.core.estimators import estimate
from summstat.core.order_stats import is_quartile_size
from .sampling import replication_rng, sample

LOG = logging.getLogger(__name__)

MIN_GRID_N = 5
DISCARD_BUDGET_FACTOR = 10
DEFAULT_CUSTOM_Q_MAX = 50
CSV_COLUMNS = ['dist', 'n', 'scenario', 'method', 'avg_rel_err_mean', 'avg_rel_err_sd', 'reps', 'seed']


def summarize(values: Sequence[float], quartiles: bool = True) -> SampleSummary:
    """
    Five-number summary and true moments of a sample.

    Quartiles are the order statistics X(Q+1) and X(3Q+1) for n = 4Q+1. The median
    is X((n+1)/2) for odd n and the mean of the middle pair for even n.
    """
    x = np.sort(np.asarray(values, dtype=np.float64))
    n = len(x)
    if n == 0:
        raise DomainError("Cannot summarize an empty sample")
    if not np.all(np.isfinite(x)):
        raise DomainError("Sample contains non-finite values")

    if n % 2 == 1:
        m = float(x[(n - 1) // 2])
    else:
        m = float((x[n // 2 - 1] + x[n // 2]) / 2)

    q1 = q3 = None
    if quartiles:
        if not is_quartile_size(n):
            raise DomainError(f"Quartiles need n = 4Q+1, got n={n}")
        q = (n - 1) // 4
        q1, q3 = float(x[q]), float(x[3 * q])

    true_sd = float(np.std(x, ddof=1)) if n > 1 else 0.0
    return SampleSummary(
        n=n,
        a=float(x[0]),
        q1=q1,
        m=m,
        q3=q3,
        b=float(x[-1]),
        true_mean=float(np.mean(x)),
        true_sd=true_sd,
    )


def relative_error(estimated: float, truth: float) -> float:
    if truth == 0:
        raise ZeroTruthError(f"Relative error is undefined against a true value of zero (estimate {estimated})")
    return (estimated - truth) / truth


def validate_config(config: SimulationConfig):
    """Raises ConfigurationError for anything that would fail after sampling started."""
    if type(config.dist) not in DISTRIBUTION_FAMILIES.values():
        raise ConfigurationError(f"Unsupported distribution {config.dist!r}")
    if isinstance(config.reps, bool) or not isinstance(config.reps, int) or config.reps < 1:
        raise ConfigurationError(f"reps must be a positive integer, got {config.reps!r}")
    if isinstance(config.master_seed, bool) or not isinstance(config.master_seed, int) \
            or not 0 <= config.master_seed < 2 ** 64:
        raise ConfigurationError(f"master_seed must be an integer in [0, 2^64), got {config.master_seed!r}")
    if len(config.n_grid) == 0:
        raise ConfigurationError("n_grid is empty")
    for n in config.n_grid:
        if isinstance(n, bool) or not isinstance(n, int) or n < MIN_GRID_N:
            raise ConfigurationError(f"Every n in the grid must be an integer >= {MIN_GRID_N}, got {n!r}")
    if len(set(config.n_grid)) != len(config.n_grid):
        raise ConfigurationError("n_grid contains duplicates")
    if len(config.scenarios) == 0:
        raise ConfigurationError("No scenarios selected")

    for scenario in config.scenarios:
        if scenario in (Scenario.C2, Scenario.C3):
            bad = [n for n in config.n_grid if not is_quartile_size(n)]
            if bad:
                raise ConfigurationError(
                    f"Scenario {scenario.value} needs every n = 4Q+1; offending sizes: {bad}"
                )
        methods = config.sd_methods.get(scenario, ())
        if len(methods) == 0:
            raise ConfigurationError(f"No SD methods given for scenario {scenario.value}")
        for method in methods:
            if method.is_mean or scenario not in method.scenarios:
                raise ConfigurationError(f"{method.token} is not an SD method for scenario {scenario.value}")
        mean_method = config.mean_methods.get(scenario, DEFAULT_MEAN_METHODS[scenario])
        if not mean_method.is_mean or scenario not in mean_method.scenarios:
            raise ConfigurationError(f"{mean_method.token} is not a mean method for scenario {scenario.value}")


def _scored_pairs(config: SimulationConfig) -> List[Tuple[Scenario, MethodId, MethodId]]:
    return [
        (scenario, sd_method, config.mean_methods.get(scenario, DEFAULT_MEAN_METHODS[scenario]))
        for scenario in config.scenarios
        for sd_method in config.sd_methods[scenario]
    ]


def _standard_error(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def _run_n(config: SimulationConfig, n: int) -> List[SimulationCell]:
    pairs = _scored_pairs(config)
    needs_quartiles = any(s in (Scenario.C2, Scenario.C3) for s in config.scenarios)
    mean_errors: Dict[int, List[float]] = {i: [] for i in range(len(pairs))}
    sd_errors: Dict[int, List[float]] = {i: [] for i in range(len(pairs))}
    used_reps = []
    discarded = 0

    rep = 0
    max_attempts = DISCARD_BUDGET_FACTOR * config.reps
    while len(used_reps) < config.reps:
        if rep >= max_attempts:
            raise NumericalError(
                f"{config.dist.tag} n={n}: only {len(used_reps)} of {config.reps} replications "
                f"had non-zero true moments after {max_attempts} attempts"
            )
        rng = replication_rng(config.master_seed, config.dist, n, rep)
        summary = summarize(sample(config.dist, n, rng), quartiles=needs_quartiles)
        if summary.true_mean == 0 or summary.true_sd == 0:
            discarded += 1
            rep += 1
            continue

        inputs = {scenario: summary.to_input(scenario) for scenario in config.scenarios}
        for i, (scenario, sd_method, mean_method) in enumerate(pairs):
            est = estimate(inputs[scenario], mean_method, sd_method)
            mean_errors[i].append(relative_error(est.mean, summary.true_mean))
            sd_errors[i].append(relative_error(est.sd, summary.true_sd))
        used_reps.append(rep)
        rep += 1

    if discarded > 0:
        LOG.warning(f"{config.dist.tag} n={n}: discarded {discarded} replications with zero true moments")
    SIMULATION_LOG.info(f"{config.dist.tag} n={n}: {config.reps} replications scored")

    lineage = SeedLineage(config.master_seed, config.dist.tag, n, tuple(used_reps))
    cells = []
    for i, (scenario, sd_method, mean_method) in enumerate(pairs):
        mean_err = np.asarray(mean_errors[i])
        sd_err = np.asarray(sd_errors[i])
        cells.append(SimulationCell(
            dist=config.dist.tag,
            n=n,
            scenario=scenario,
            method=sd_method,
            mean_method=mean_method,
            avg_rel_err_mean=float(np.mean(mean_err)),
            avg_rel_err_sd=float(np.mean(sd_err)),
            reps=config.reps,
            seed_lineage=lineage,
            se_rel_err_mean=_standard_error(mean_err),
            se_rel_err_sd=_standard_error(sd_err),
            discarded=discarded,
        ))
    return cells


def run_grid(config: SimulationConfig, threads: Optional[int] = None) -> List[SimulationCell]:
    """
    Run every (n, scenario, method) cell of a config.

    Cells for different n run on a thread pool; randomness is keyed on
    (master_seed, dist, n, rep) so the result equals a sequential run.
    """
    validate_config(config)
    if threads is None:
        threads = SS_CONFIG.threads
    if threads < 1:
        raise ConfigurationError(f"threads must be at least 1, got {threads}")

    LOG.info(
        f"Simulating {config.dist.tag}: {len(config.n_grid)} sample sizes x {config.reps} reps "
        f"on {threads} thread(s)"
    )
    run = functools.partial(_run_n, config)
    if threads == 1:
        per_n = [run(n) for n in config.n_grid]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_n = list(pool.map(run, config.n_grid))
    return [cell for cells in per_n for cell in cells]


def run_study(configs: Iterable[SimulationConfig], threads: Optional[int] = None) -> List[SimulationCell]:
    cells = []
    for config in configs:
        cells.extend(run_grid(config, threads))
    return cells


# -----------------------------------------------
# Config builders
# -----------------------------------------------

def _resolve_grid(q_max: Optional[int], q_values: Optional[Sequence[int]], default_q_max: int) -> Tuple[int, ...]:
    if q_values:
        if any(q < 1 for q in q_values):
            raise ConfigurationError(f"Q values must be positive, got {list(q_values)}")
        return tuple(4 * q + 1 for q in sorted(set(q_values)))
    q_max = default_q_max if q_max is None else q_max
    if q_max < 1:
        raise ConfigurationError(f"q_max must be positive, got {q_max}")
    return quartile_grid(q_max)


def build_preset_configs(
    preset_name: str,
    reps: Optional[int] = None,
    master_seed: Optional[int] = None,
    q_max: Optional[int] = None,
    q_values: Optional[Sequence[int]] = None,
) -> List[SimulationConfig]:
    """One SimulationConfig per distribution of a named study preset."""
    preset = STUDY_PRESETS.get(preset_name)
    if preset is None:
        raise ConfigurationError(
            f"Unknown study {preset_name!r}; choose from {', '.join(STUDY_PRESETS)}"
        )
    n_grid = _resolve_grid(q_max, q_values, preset.q_max)
    return [
        SimulationConfig(
            dist=dist,
            n_grid=n_grid,
            reps=SS_CONFIG.reps if reps is None else reps,
            master_seed=SS_CONFIG.master_seed if master_seed is None else master_seed,
            scenarios=preset.scenarios,
            sd_methods=dict(preset.sd_methods),
        )
        for dist in preset.distributions
    ]


def build_distribution(family: str, params: Dict[str, float]) -> DistributionSpec:
    cls = DISTRIBUTION_FAMILIES.get(family.strip().lower())
    if cls is None:
        raise ConfigurationError(
            f"Unknown distribution {family!r}; choose from {', '.join(DISTRIBUTION_FAMILIES)}"
        )
    try:
        return cls(**params)
    except TypeError as e:
        raise ConfigurationError(f"Bad parameters {params} for {family}: {e}")
    except DomainError as e:
        raise ConfigurationError(str(e))


def build_custom_config(
    dist: DistributionSpec,
    scenarios: Sequence[Scenario],
    sd_methods: Optional[Sequence[MethodId]] = None,
    reps: Optional[int] = None,
    master_seed: Optional[int] = None,
    q_max: Optional[int] = None,
    q_values: Optional[Sequence[int]] = None,
) -> SimulationConfig:
    """
    A single-distribution config. With no explicit SD methods every method valid for a
    scenario is scored; explicit methods are kept for the scenarios they apply to.
    """
    scenarios = tuple(scenarios)
    by_scenario = {}
    for scenario in scenarios:
        if sd_methods:
            methods = tuple(m for m in sd_methods if scenario in m.scenarios and not m.is_mean)
        else:
            methods = tuple(m for m in MethodId if scenario in m.scenarios and not m.is_mean)
        by_scenario[scenario] = methods
    return SimulationConfig(
        dist=dist,
        n_grid=_resolve_grid(q_max, q_values, DEFAULT_CUSTOM_Q_MAX),
        reps=SS_CONFIG.reps if reps is None else reps,
        master_seed=SS_CONFIG.master_seed if master_seed is None else master_seed,
        scenarios=scenarios,
        sd_methods=by_scenario,
    )


# -----------------------------------------------
# Output
# -----------------------------------------------

def cells_to_frame(cells: Iterable[SimulationCell]) -> pd.DataFrame:
    rows = [
        {
            'dist': cell.dist,
            'n': cell.n,
            'scenario': cell.scenario.value,
            'method': cell.method.token,
            'avg_rel_err_mean': cell.avg_rel_err_mean,
            'avg_rel_err_sd': cell.avg_rel_err_sd,
            'reps': cell.reps,
            'seed': cell.seed_lineage.master_seed,
        }
        for cell in cells
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_cells_csv(cells: Iterable[SimulationCell], out: Union[str, TextIO]):
    cells_to_frame(cells).to_csv(out, index=False, float_format='%.8f', lineterminator='\n')
