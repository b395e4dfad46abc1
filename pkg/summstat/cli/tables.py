# stdlib
import logging
from typing import Optional

# 3rd-party
import click

# Local
from summstat.core.model import ScalingKind
from summstat.core.order_stats import generate_table, table_csv
from summstat.reports import ScalingTableReport
from .common import handle_errors

LOG = logging.getLogger(__name__)


@handle_errors
def tables(kind: str, max_index: int, approx: str, layout: str, out: Optional[str]):
    table = generate_table(ScalingKind.to_enum(kind), max_index, approximation=approx)

    if layout == 'paper':
        text = ScalingTableReport(table).to_cli_str() + "\n"
    else:
        text = table_csv(table)

    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, 'w', newline='') as f:
            f.write(text)
        LOG.info(f"Wrote {len(table.entries)} rows to {out}")
