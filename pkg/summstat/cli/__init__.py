# 3rd-party
import click
import logging

# Local
from summstat import ROOT_LOG
from summstat.core.config import SS_CONFIG
from summstat.core.constants import STUDY_PRESETS
from summstat.core.model import CommandConfig, DISTRIBUTION_FAMILIES
from .common import parse_method, parse_methods, parse_scenarios, parse_params, parse_int_list
from .estimate import estimate
from .tables import tables
from .simulate import simulate
from .batch import batch

METHOD_HELP = "Method token, e.g. sd_wan_blom; case-insensitive, dashes allowed"


@click.group()
@click.option('-v', '--verbose', is_flag=True, show_default=True, default=False,
              help="Turn on verbose logging")
def summstat(verbose):
    if verbose:
        ROOT_LOG.setLevel(logging.DEBUG)
    else:
        ROOT_LOG.setLevel(SS_CONFIG.log_level)


NAME_TO_CMD_CONFIG_MAP = {
    'estimate': CommandConfig(
        estimate,
        'Estimate the sample mean and SD of one study from its reported summaries',
        [
            click.option('--n', 'n', type=int, required=True, help="Sample size"),
            click.option('--min', 'minimum', type=float, help="Minimum (a)"),
            click.option('--q1', 'q1', type=float, help="First quartile"),
            click.option('--median', 'median', type=float, help="Median (m)"),
            click.option('--q3', 'q3', type=float, help="Third quartile"),
            click.option('--max', 'maximum', type=float, help="Maximum (b)"),
            click.option('--mean-method', callback=parse_method, help=METHOD_HELP),
            click.option('--sd-method', callback=parse_method, help=METHOD_HELP),
            click.option('--csv', 'as_csv', is_flag=True, default=False,
                         help="Print one machine-readable CSV row instead of the report"),
        ]
    ),
    'tables': CommandConfig(
        tables,
        'Emit the xi(n) or eta(n) scaling constants as CSV',
        [
            click.option('--kind', type=click.Choice(['xi', 'eta'], case_sensitive=False), required=True),
            click.option('--max', 'max_index', type=click.IntRange(min=1), required=True,
                         help="Largest n (xi) or Q (eta)"),
            click.option('--approx', type=click.Choice(['exact', 'blom'], case_sensitive=False),
                         default='exact', show_default=True),
            click.option('--layout', type=click.Choice(['csv', 'paper'], case_sensitive=False),
                         default='csv', show_default=True,
                         help="csv, or a five-block grid for reading"),
            click.option('--out', type=click.Path(dir_okay=False, writable=True),
                         help="Output path; standard output when absent"),
        ]
    ),
    'simulate': CommandConfig(
        simulate,
        'Run a relative-error simulation study and write its CSV',
        [
            click.option('--study', type=click.Choice(list(STUDY_PRESETS), case_sensitive=False),
                         help="Preset study"),
            click.option('--custom', type=click.Choice(list(DISTRIBUTION_FAMILIES), case_sensitive=False),
                         help="Distribution family for a custom study"),
            click.option('--param', 'params', multiple=True, callback=parse_params,
                         help="Distribution parameter KEY=VALUE, e.g. mu=5"),
            click.option('--reps', type=click.IntRange(min=1),
                         help=f"Replications per cell [default: {SS_CONFIG.reps}]"),
            click.option('--seed', type=click.IntRange(min=0, max=2 ** 64 - 1),
                         help=f"Master seed [default: {SS_CONFIG.master_seed}]"),
            click.option('--q-max', type=click.IntRange(min=1), help="Grid n = 4Q+1 for Q = 1..q-max"),
            click.option('--q-values', callback=parse_int_list, help="Explicit comma-separated Q values"),
            click.option('--scenario', 'scenarios', multiple=True, callback=parse_scenarios,
                         help="C1, C2 or C3 (custom studies; repeatable)"),
            click.option('--sd-method', 'sd_methods', multiple=True, callback=parse_methods,
                         help="SD method (custom studies; repeatable)"),
            click.option('--out', type=click.Path(dir_okay=False, writable=True),
                         help="Output path; standard output when absent"),
        ]
    ),
    'batch': CommandConfig(
        batch,
        'Enrich a CSV of study summaries with mean and SD estimates',
        [
            click.option('--input', 'input_path', required=True, help="Input CSV"),
            click.option('--output', 'output_path', required=True,
                         help="Output CSV; rejects go to <output>.rejects.csv"),
            click.option('--mean-method', callback=parse_method, help=METHOD_HELP),
            click.option('--sd-method', callback=parse_method, help=METHOD_HELP),
        ]
    ),
}

for cmd_name, cmd_cfg in NAME_TO_CMD_CONFIG_MAP.items():
    cmd = cmd_cfg.func
    for decorator in reversed(cmd_cfg.decorators):
        cmd = decorator(cmd)
    summstat.command(name=cmd_name, help=cmd_cfg.help)(cmd)
