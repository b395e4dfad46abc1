# stdlib
from typing import Optional

# 3rd-party
import click

# Local
from summstat.core.model import MethodId
from summstat.batch import process_file
from .common import handle_errors


@handle_errors
def batch(input_path: str, output_path: str, mean_method: Optional[MethodId], sd_method: Optional[MethodId]):
    summary = process_file(input_path, output_path, mean_method, sd_method)
    click.echo(str(summary))
    return summary
