# stdlib
import io
import math

# 3rd-party
import numpy as np
import pytest
from scipy import stats

# Local
from summstat.core.errors import ConfigurationError, DomainError, NumericalError, ZeroTruthError
from summstat.core.model import (
    Beta,
    Exponential,
    LogNormal,
    MethodId,
    Normal,
    Scenario,
    SimulationConfig,
    Weibull,
)
from summstat.core.estimators import estimate
from summstat.simulation import harness
from summstat.simulation.harness import (
    CSV_COLUMNS,
    build_custom_config,
    build_distribution,
    build_preset_configs,
    cells_to_frame,
    relative_error,
    run_grid,
    summarize,
    validate_config,
    write_cells_csv,
)
from summstat.simulation.sampling import gamma, open_uniforms, replication_rng, sample

NORMAL = Normal(mu=50, sigma=17)


def _config(**overrides):
    kwargs = dict(
        dist=NORMAL,
        n_grid=(9, 21),
        reps=5,
        master_seed=7,
        scenarios=(Scenario.C1, Scenario.C3),
        sd_methods={
            Scenario.C1: (MethodId.SD_WAN_BLOM, MethodId.SD_RANGE_RULE),
            Scenario.C3: (MethodId.SD_COCHRANE,),
        },
    )
    kwargs.update(overrides)
    return SimulationConfig(**kwargs)


# -----------------------------------------------
# Sample summaries
# -----------------------------------------------

def test_summarize():
    s = summarize([5, 1, 3, 2, 4])
    assert (s.n, s.a, s.q1, s.m, s.q3, s.b) == (5, 1, 2, 3, 4, 5)
    assert s.true_mean == 3
    assert s.true_sd == pytest.approx(math.sqrt(2.5))

    s = summarize(list(range(1, 10)))
    assert (s.q1, s.m, s.q3) == (3, 5, 7)

    s = summarize([4, 1, 3, 2], quartiles=False)
    assert s.m == 2.5
    assert s.q1 is None and s.q3 is None


def test_summarize_errors():
    with pytest.raises(DomainError):
        summarize([1, 2, 3, 4])
    with pytest.raises(DomainError):
        summarize([])
    with pytest.raises(DomainError):
        summarize([1, 2, float('nan'), 4, 5])


def test_summary_to_input():
    s = summarize([4, 1, 3, 2], quartiles=False)
    assert s.to_input(Scenario.C1).m == 2.5
    with pytest.raises(DomainError):
        s.to_input(Scenario.C3)


def test_relative_error():
    assert relative_error(1.1, 1.0) == pytest.approx(0.1)
    assert relative_error(-3.0, -2.0) == pytest.approx(0.5)
    with pytest.raises(ZeroTruthError):
        relative_error(1.0, 0.0)


# -----------------------------------------------
# Sampling
# -----------------------------------------------

def test_replication_streams_are_deterministic():
    a = sample(NORMAL, 50, replication_rng(11, NORMAL, 50, 3))
    b = sample(NORMAL, 50, replication_rng(11, NORMAL, 50, 3))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample(NORMAL, 50, replication_rng(11, NORMAL, 50, 4)))
    assert not np.array_equal(a, sample(NORMAL, 50, replication_rng(12, NORMAL, 50, 3)))
    other = Normal(mu=50, sigma=18)
    assert not np.array_equal(a, sample(other, 50, replication_rng(11, other, 50, 3)))


def test_open_uniforms():
    u = open_uniforms(np.random.default_rng(1), 100_000)
    assert np.all(u > 0) and np.all(u < 1)
    assert u.mean() == pytest.approx(0.5, abs=0.005)


@pytest.mark.parametrize("dist,mean,sd", [
    (NORMAL, 50, 17),
    (LogNormal(mu=4, sigma=0.3), math.exp(4.045), math.exp(4.045) * math.sqrt(math.exp(0.09) - 1)),
    (Beta(alpha=9, beta=4), 9 / 13, math.sqrt(36 / (169 * 14))),
    (Exponential(rate=10), 0.1, 0.1),
    (Weibull(k=2, scale=35), 35 * math.gamma(1.5), 35 * math.sqrt(1 - math.gamma(1.5) ** 2)),
])
def test_sampler_moments(dist, mean, sd):
    x = sample(dist, 200_000, np.random.default_rng(2014))
    assert x.mean() == pytest.approx(mean, abs=5 * sd / math.sqrt(len(x)))
    assert x.std(ddof=1) == pytest.approx(sd, rel=0.02)


def test_sampler_supports():
    rng = np.random.default_rng(3)
    assert np.all(sample(Exponential(rate=2), 1000, rng) > 0)
    beta = sample(Beta(alpha=0.5, beta=0.5), 1000, rng)
    assert np.all((beta > 0) & (beta < 1))
    assert np.all(sample(LogNormal(mu=0, sigma=2), 1000, rng) > 0)


@pytest.mark.parametrize("shape", [0.3, 1.0, 2.5, 9.0])
def test_gamma_distribution(shape):
    x = gamma(shape, 20_000, np.random.default_rng(99))
    assert len(x) == 20_000
    assert np.all(x > 0)
    assert stats.kstest(x, 'gamma', args=(shape,)).pvalue > 1e-4


def test_sample_errors():
    with pytest.raises(DomainError):
        sample(NORMAL, 0, np.random.default_rng(1))
    with pytest.raises(DomainError):
        sample("normal", 5, np.random.default_rng(1))
    with pytest.raises(DomainError):
        gamma(0.0, 5, np.random.default_rng(1))


# -----------------------------------------------
# Config validation and builders
# -----------------------------------------------

@pytest.mark.parametrize("overrides", [
    {'n_grid': (4,)},
    {'n_grid': ()},
    {'n_grid': (9, 9)},
    {'n_grid': (10,)},
    {'reps': 0},
    {'master_seed': -1},
    {'scenarios': ()},
    {'sd_methods': {Scenario.C1: (MethodId.SD_BLAND,), Scenario.C3: (MethodId.SD_COCHRANE,)}},
    {'sd_methods': {Scenario.C1: (MethodId.SD_WAN_BLOM,)}},
    {'mean_methods': {Scenario.C3: MethodId.MEAN_FULL}},
])
def test_validate_config_errors(overrides):
    with pytest.raises(ConfigurationError):
        validate_config(_config(**overrides))


def test_c1_only_grid_accepts_any_size():
    validate_config(_config(
        n_grid=(6, 10),
        scenarios=(Scenario.C1,),
        sd_methods={Scenario.C1: (MethodId.SD_HOZO_ADAPTIVE,)},
    ))


def test_build_preset_configs():
    configs = build_preset_configs('c1-normal', reps=10, master_seed=1, q_values=[5, 1])
    assert len(configs) == 1
    assert configs[0].n_grid == (5, 21)
    assert configs[0].dist == NORMAL
    assert configs[0].reps == 10

    configs = build_preset_configs('c3', reps=10, master_seed=1, q_max=2)
    assert len(configs) == 5
    assert all(c.n_grid == (5, 9) for c in configs)
    assert configs[0].scenarios == (Scenario.C1, Scenario.C2, Scenario.C3)

    assert build_preset_configs('c2')[0].n_grid[-1] == 201

    with pytest.raises(ConfigurationError):
        build_preset_configs('c4')
    with pytest.raises(ConfigurationError):
        build_preset_configs('c2', q_values=[0])


def test_build_distribution():
    assert build_distribution('normal', {'mu': 5, 'sigma': 1}) == Normal(mu=5, sigma=1)
    assert build_distribution('Weibull', {'k': 2, 'scale': 35}) == Weibull(k=2, scale=35)
    with pytest.raises(ConfigurationError):
        build_distribution('normal', {'mu': 5})
    with pytest.raises(ConfigurationError):
        build_distribution('normal', {'mu': 5, 'sigma': -1})
    with pytest.raises(ConfigurationError):
        build_distribution('cauchy', {})


def test_build_custom_config():
    config = build_custom_config(NORMAL, [Scenario.C1, Scenario.C3], reps=5, master_seed=3, q_max=2)
    assert config.n_grid == (5, 9)
    assert len(config.sd_methods[Scenario.C1]) == 5
    assert set(config.sd_methods[Scenario.C3]) == {
        MethodId.SD_WAN_EXACT, MethodId.SD_WAN_BLOM, MethodId.SD_COCHRANE,
    }

    config = build_custom_config(
        NORMAL, [Scenario.C1, Scenario.C3], [MethodId.SD_WAN_EXACT, MethodId.SD_RANGE_RULE], reps=5,
    )
    assert config.sd_methods[Scenario.C1] == (MethodId.SD_WAN_EXACT, MethodId.SD_RANGE_RULE)
    assert config.sd_methods[Scenario.C3] == (MethodId.SD_WAN_EXACT,)
    assert config.n_grid[-1] == 201


# -----------------------------------------------
# Harness
# -----------------------------------------------

def test_single_replication_matches_manual_scoring():
    config = _config(n_grid=(9,), reps=1)
    cells = run_grid(config, threads=1)
    assert len(cells) == 3

    summary = summarize(sample(NORMAL, 9, replication_rng(7, NORMAL, 9, 0)))
    for cell in cells:
        est = estimate(summary.to_input(cell.scenario), cell.mean_method, cell.method)
        assert cell.avg_rel_err_mean == relative_error(est.mean, summary.true_mean)
        assert cell.avg_rel_err_sd == relative_error(est.sd, summary.true_sd)
        assert cell.reps == 1
        assert cell.discarded == 0
        assert cell.seed_lineage.rep_indices == (0,)
        assert cell.se_rel_err_sd == 0.0


def test_cells_share_each_sample():
    cells = run_grid(_config(n_grid=(9,), reps=20), threads=1)
    c1 = [c for c in cells if c.scenario == Scenario.C1]
    assert c1[0].avg_rel_err_mean == c1[1].avg_rel_err_mean
    assert c1[0].avg_rel_err_sd != c1[1].avg_rel_err_sd


def test_run_grid_is_deterministic():
    config = _config()
    first = run_grid(config, threads=1)
    assert first == run_grid(config, threads=1)
    assert first == run_grid(config, threads=3)
    assert [c.n for c in first] == [9, 9, 9, 21, 21, 21]
    assert first != run_grid(_config(master_seed=8), threads=1)


def test_zero_truth_replications_are_replaced(monkeypatch):
    calls = []

    def flaky_sample(dist, n, rng):
        calls.append(n)
        if len(calls) == 1:
            return np.zeros(n)
        return sample(dist, n, rng)

    monkeypatch.setattr(harness, 'sample', flaky_sample)
    cells = run_grid(_config(n_grid=(9,), reps=3), threads=1)
    assert len(calls) == 4
    for cell in cells:
        assert cell.reps == 3
        assert cell.discarded == 1
        assert cell.seed_lineage.rep_indices == (1, 2, 3)
        assert str(cell.seed_lineage).endswith("reps=1-3")


def test_discard_budget_exhausted(monkeypatch):
    monkeypatch.setattr(harness, 'sample', lambda dist, n, rng: np.full(n, 2.0))
    with pytest.raises(NumericalError):
        run_grid(_config(n_grid=(9,), reps=2), threads=1)


def test_cells_to_frame_and_csv():
    cells = run_grid(_config(n_grid=(9,), reps=2), threads=1)
    frame = cells_to_frame(cells)
    assert list(frame.columns) == CSV_COLUMNS
    assert len(frame) == 3
    assert set(frame['scenario']) == {'C1', 'C3'}
    assert set(frame['seed']) == {7}
    assert frame['dist'].iloc[0] == 'normal(50,17)'

    out = io.StringIO()
    write_cells_csv(cells, out)
    lines = out.getvalue().splitlines()
    assert lines[0] == ','.join(CSV_COLUMNS)
    # The tag contains a comma, so it is quoted
    assert lines[1].startswith('"normal(50,17)",9,C1,sd_wan_blom,')
    assert len(lines) == 4


def test_empty_frame_has_header():
    assert list(cells_to_frame([]).columns) == CSV_COLUMNS


# -----------------------------------------------
# Relative-error behaviour on normal data
# -----------------------------------------------

@pytest.fixture(scope='module')
def c1_normal_cells():
    config = build_custom_config(
        NORMAL,
        [Scenario.C1],
        [MethodId.SD_RANGE_RULE, MethodId.SD_HOZO_ADAPTIVE, MethodId.SD_WAN_BLOM],
        reps=1000,
        master_seed=2014,
        q_values=[1, 5, 25, 100, 250],
    )
    cells = run_grid(config, threads=2)
    return {(c.method, c.n): c.avg_rel_err_sd for c in cells}


@pytest.mark.slow
def test_range_rule_crosses_zero(c1_normal_cells):
    assert c1_normal_cells[(MethodId.SD_RANGE_RULE, 21)] < 0
    assert c1_normal_cells[(MethodId.SD_RANGE_RULE, 101)] > 0


@pytest.mark.slow
def test_hozo_adaptive_crosses_zero_at_large_n(c1_normal_cells):
    assert c1_normal_cells[(MethodId.SD_HOZO_ADAPTIVE, 401)] < 0
    assert c1_normal_cells[(MethodId.SD_HOZO_ADAPTIVE, 1001)] > 0


@pytest.mark.slow
def test_blom_range_estimator_is_nearly_unbiased(c1_normal_cells):
    # Errors are relative to the sample SD, whose own bias dominates at small n
    for n in (21, 101, 401, 1001):
        assert abs(c1_normal_cells[(MethodId.SD_WAN_BLOM, n)]) <= 0.03


@pytest.fixture(scope='module')
def scenario_study_normal_cells():
    config = build_preset_configs('c3', reps=4000, master_seed=6, q_values=[5, 25, 50])[0]
    assert config.dist == NORMAL
    return run_grid(config, threads=2)


@pytest.mark.slow
def test_scenario_mean_estimators_on_normal_data(scenario_study_normal_cells):
    assert {c.scenario for c in scenario_study_normal_cells} == {Scenario.C1, Scenario.C2, Scenario.C3}
    for cell in scenario_study_normal_cells:
        assert cell.n >= 21
        assert abs(cell.avg_rel_err_mean) <= 0.01, cell


@pytest.mark.slow
def test_scenario_sd_estimators_on_normal_data(scenario_study_normal_cells):
    # The sample SD's own bias, 1/c4(n) - 1, is +1.27% at n = 21 and +0.25% at n = 101
    checked = [c for c in scenario_study_normal_cells if c.n >= 101]
    assert {(c.scenario, c.method) for c in checked} == {
        (Scenario.C1, MethodId.SD_WAN_BLOM),
        (Scenario.C2, MethodId.SD_WAN_BLOM),
        (Scenario.C3, MethodId.SD_WAN_EXACT),
        (Scenario.C3, MethodId.SD_WAN_BLOM),
    }
    for cell in checked:
        assert abs(cell.avg_rel_err_sd) <= 0.01, cell


# -----------------------------------------------
# Relative-error behaviour on skewed data
# -----------------------------------------------

@pytest.mark.slow
def test_blom_range_estimator_on_skewed_data():
    errors = {}
    for config in build_preset_configs('c1-skewed', reps=1000, master_seed=2014):
        for cell in run_grid(config, threads=2):
            errors[(cell.dist, cell.n, cell.method)] = cell.avg_rel_err_sd

    points = {(dist, n) for dist, n, _ in errors}
    assert len(points) == 4 * 25
    for dist, n in points:
        assert abs(errors[(dist, n, MethodId.SD_WAN_BLOM)]) <= 0.08, (dist, n)

    better = sum(
        abs(errors[(dist, n, MethodId.SD_WAN_BLOM)]) < abs(errors[(dist, n, MethodId.SD_HOZO_ADAPTIVE)])
        for dist, n in points
    )
    assert better / len(points) >= 0.8


@pytest.mark.slow
def test_bland_estimator_drifts_upwards_on_heavy_tailed_lognormal():
    config = build_preset_configs('c2', reps=1000, master_seed=2014, q_values=[1, 50])[-1]
    assert config.dist == LogNormal(mu=5, sigma=1)
    bland = {c.n: c.avg_rel_err_sd for c in run_grid(config, threads=2) if c.method == MethodId.SD_BLAND}
    assert bland[5] < 0
    assert bland[201] > 0
