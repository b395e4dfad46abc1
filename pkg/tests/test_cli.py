# 3rd-party
import pandas as pd
import pytest
from click.testing import CliRunner

# Local
from summstat.cli import summstat
from summstat.core.order_stats import blom_xi
from summstat.utils import format_number


@pytest.fixture
def runner():
    return CliRunner()


# -----------------------------------------------
# estimate
# -----------------------------------------------

def test_estimate_c1_defaults(runner):
    result = runner.invoke(summstat, ['estimate', '--n', '10', '--min', '0', '--median', '1', '--max', '3', '--csv'])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines() == [
        "scenario,n,mean,sd,mean_method,sd_method,flags",
        f"C1,10,1.25,{format_number(3 / blom_xi(10))},mean_simple,sd_wan_blom,BLOM_APPROXIMATION_USED",
    ]


def test_estimate_c3_exact(runner):
    result = runner.invoke(summstat, [
        'estimate', '--n', '201', '--q1', '0', '--median', '0.67', '--q3', '1.340',
        '--sd-method', 'SD-WAN-EXACT', '--csv',
    ])
    assert result.exit_code == 0, result.output
    row = result.output.splitlines()[1].split(',')
    assert row[0] == 'C3'
    assert float(row[3]) == pytest.approx(1.0, abs=1e-3)
    assert row[5] == 'sd_wan_exact'


def test_estimate_report(runner):
    result = runner.invoke(summstat, ['estimate', '--n', '20', '--min', '0', '--median', '2', '--max', '4',
                                      '--sd-method', 'sd_hozo_adaptive'])
    assert result.exit_code == 0, result.output
    assert "Estimated sample mean and SD" in result.output
    assert "Reported: a=0, m=2, b=4" in result.output
    assert "sd_hozo_adaptive (Hozo adaptive range rule" in result.output
    assert "mean_simple (Large-sample mean from the reported quantiles)" in result.output


def test_estimate_errors(runner):
    # Explicit SD method with a single observation
    result = runner.invoke(summstat, ['estimate', '--n', '1', '--min', '0', '--median', '1', '--max', '2',
                                      '--sd-method', 'sd_wan_exact'])
    assert result.exit_code == 1
    assert "at least 2" in result.output

    result = runner.invoke(summstat, ['estimate', '--n', '10', '--min', '0', '--median', '1'])
    assert result.exit_code == 1
    assert "max" in result.output

    result = runner.invoke(summstat, ['estimate', '--n', '10', '--q1', '0', '--median', '1', '--q3', '2',
                                      '--sd-method', 'sd_bland'])
    assert result.exit_code == 1

    result = runner.invoke(summstat, ['estimate', '--n', '10', '--min', '0', '--median', '1', '--max', '2',
                                      '--sd-method', 'sd_magic'])
    assert result.exit_code == 2


def test_estimate_single_observation_has_no_sd(runner):
    result = runner.invoke(summstat, ['estimate', '--n', '1', '--min', '0', '--median', '1', '--max', '2', '--csv'])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[1] == "C1,1,1,,mean_simple,,"


# -----------------------------------------------
# tables
# -----------------------------------------------

def test_tables_xi(runner):
    result = runner.invoke(summstat, ['tables', '--kind', 'xi', '--max', '50'])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert len(lines) == 51
    assert lines[0] == "index,value"
    assert lines[1] == "1,0.000"
    assert lines[2] == "2,1.128"
    assert lines[10] == "10,3.078"
    assert lines[50] == "50,4.498"


def test_tables_eta_to_file(runner, tmp_path):
    out = tmp_path / 'eta.csv'
    result = runner.invoke(summstat, ['tables', '--kind', 'ETA', '--max', '3', '--out', str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_text() == "index,value\n1,0.990\n2,1.144\n3,1.206\n"


def test_tables_paper_layout(runner):
    result = runner.invoke(summstat, ['tables', '--kind', 'eta', '--max', '10', '--layout', 'paper'])
    assert result.exit_code == 0, result.output
    assert "Values of eta (exact)" in result.output
    assert "Sample size n = 4Q+1" in result.output
    assert "1.303" in result.output


@pytest.mark.parametrize("args", [
    ['tables', '--kind', 'xi', '--max', '0'],
    ['tables', '--kind', 'zeta', '--max', '5'],
    ['tables', '--kind', 'xi'],
])
def test_tables_usage_errors(runner, args):
    assert runner.invoke(summstat, args).exit_code == 2


# -----------------------------------------------
# simulate
# -----------------------------------------------

SIMULATE_ARGS = [
    'simulate', '--custom', 'normal', '--param', 'mu=5', '--param', 'sigma=1',
    '--scenario', 'C3', '--q-values', '1,2', '--reps', '5', '--seed', '99',
]


def test_simulate_is_reproducible(runner, tmp_path):
    first, second = tmp_path / 'first.csv', tmp_path / 'second.csv'
    assert runner.invoke(summstat, SIMULATE_ARGS + ['--out', str(first)]).exit_code == 0
    assert runner.invoke(summstat, SIMULATE_ARGS + ['--out', str(second)]).exit_code == 0
    assert first.read_text() == second.read_text()

    frame = pd.read_csv(first)
    assert len(frame) == 6
    assert set(frame['n']) == {5, 9}
    assert set(frame['method']) == {'sd_wan_exact', 'sd_wan_blom', 'sd_cochrane'}
    assert set(frame['seed']) == {99}
    assert set(frame['reps']) == {5}


def test_simulate_study_preset(runner, tmp_path):
    out = tmp_path / 'c1.csv'
    result = runner.invoke(summstat, ['simulate', '--study', 'c1-normal', '--q-max', '2', '--reps', '3',
                                      '--out', str(out)])
    assert result.exit_code == 0, result.output
    assert "Simulation study: c1-normal" in result.output
    frame = pd.read_csv(out)
    assert len(frame) == 8
    assert set(frame['dist']) == {'normal(50,17)'}


def test_simulate_writes_stdout_by_default(runner):
    result = runner.invoke(summstat, SIMULATE_ARGS)
    assert result.exit_code == 0, result.output
    assert "dist,n,scenario,method,avg_rel_err_mean,avg_rel_err_sd,reps,seed" in result.output


@pytest.mark.parametrize("args", [
    ['simulate', '--study', 'c2', '--custom', 'normal'],
    ['simulate'],
    ['simulate', '--study', 'c2', '--param', 'mu=1'],
    ['simulate', '--custom', 'normal', '--param', 'mu'],
    ['simulate', '--custom', 'normal', '--q-values', 'a,b'],
    ['simulate', '--custom', 'cauchy'],
    ['simulate', '--study', 'c2', '--reps', '0'],
])
def test_simulate_usage_errors(runner, args):
    assert runner.invoke(summstat, args).exit_code == 2


def test_simulate_bad_distribution_params(runner):
    result = runner.invoke(summstat, ['simulate', '--custom', 'normal', '--param', 'mu=5', '--reps', '2'])
    assert result.exit_code == 1
    result = runner.invoke(summstat, ['simulate', '--custom', 'exponential', '--param', 'rate=-1', '--reps', '2'])
    assert result.exit_code == 1


# -----------------------------------------------
# batch
# -----------------------------------------------

def test_batch(runner, tmp_path):
    input_path = tmp_path / 'in.csv'
    input_path.write_text(
        "study_id,n,min,q1,median,q3,max\n"
        "a,20,0,,2,,4\n"
        "b,9,0,1,2,3,4\n"
        "c,9,,1,2,3,\n"
    )
    output_path = tmp_path / 'out.csv'
    result = runner.invoke(summstat, ['batch', '--input', str(input_path), '--output', str(output_path),
                                      '--sd-method', 'sd_wan_exact'])
    assert result.exit_code == 0, result.output
    assert "processed=3 enriched=3 rejected=0" in result.output
    out = pd.read_csv(output_path, dtype=str, keep_default_na=False)
    assert list(out['scenario']) == ['C1', 'C2', 'C3']
    assert (tmp_path / 'out.csv.rejects.csv').exists()


def test_batch_missing_input(runner, tmp_path):
    result = runner.invoke(summstat, ['batch', '--input', str(tmp_path / 'nope.csv'),
                                      '--output', str(tmp_path / 'out.csv')])
    assert result.exit_code == 1
    assert "not found" in result.output
