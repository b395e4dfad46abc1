# stdlib
import sys
import logging
from typing import Dict, Optional, Tuple

# 3rd-party
import click

# Local
from summstat.core.config import SS_CONFIG
from summstat.core.model import MethodId, Scenario
from summstat.simulation import (
    build_custom_config,
    build_distribution,
    build_preset_configs,
    run_study,
    write_cells_csv,
)
from summstat.reports import SimulationSummary
from .common import handle_errors

LOG = logging.getLogger(__name__)


@handle_errors
def simulate(
    study: Optional[str],
    custom: Optional[str],
    params: Dict[str, float],
    reps: Optional[int],
    seed: Optional[int],
    q_max: Optional[int],
    q_values: Optional[Tuple[int, ...]],
    scenarios: Tuple[Scenario, ...],
    sd_methods: Tuple[MethodId, ...],
    out: Optional[str],
):
    if (study is None) == (custom is None):
        raise click.UsageError("Give exactly one of --study or --custom")
    if study is not None and (scenarios or sd_methods or params):
        raise click.UsageError("--scenario, --sd-method and --param only apply to --custom")

    seed = SS_CONFIG.master_seed if seed is None else seed
    if study is not None:
        configs = build_preset_configs(study, reps=reps, master_seed=seed, q_max=q_max, q_values=q_values)
        name = study
    else:
        dist = build_distribution(custom, params)
        configs = [build_custom_config(
            dist,
            scenarios or tuple(Scenario),
            sd_methods=sd_methods or None,
            reps=reps,
            master_seed=seed,
            q_max=q_max,
            q_values=q_values,
        )]
        name = dist.tag

    cells = run_study(configs)

    if out is None:
        write_cells_csv(cells, sys.stdout)
    else:
        write_cells_csv(cells, out)
        LOG.info(f"Wrote {len(cells)} cells to {out}")

    click.echo(SimulationSummary(cells, name).to_cli_str(), err=True)
