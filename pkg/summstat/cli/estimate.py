# stdlib
import logging
from typing import Optional

# 3rd-party
import click

# Local
from summstat.core.model import MethodId, StudyRecord
from summstat.core.estimators import estimate as estimate_input
from summstat.batch.batch_io import detect_scenario, record_to_input
from summstat.reports import EstimateReport
from .common import handle_errors

LOG = logging.getLogger(__name__)


@handle_errors
def estimate(
    n: int,
    minimum: Optional[float],
    q1: Optional[float],
    median: Optional[float],
    q3: Optional[float],
    maximum: Optional[float],
    mean_method: Optional[MethodId],
    sd_method: Optional[MethodId],
    as_csv: bool,
):
    record = StudyRecord(
        line_no=0,
        study_id='cli',
        n=n,
        min=minimum,
        q1=q1,
        median=median,
        q3=q3,
        max=maximum,
    )
    scenario = detect_scenario(record)
    LOG.debug(f"Detected scenario {scenario.value}")
    input = record_to_input(record, scenario)
    report = EstimateReport(input, estimate_input(input, mean_method, sd_method))

    if as_csv:
        click.echo(report.to_csv_str(), nl=False)
    else:
        click.echo(report.to_cli_str())
    return report.to_dict()
