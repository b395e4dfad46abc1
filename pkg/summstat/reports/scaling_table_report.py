# stdlib
import math

# 3rd-party
from tabulate import tabulate

# Local
from summstat.utils import format_fixed
from summstat.core.model import ScalingTable
from .report_base import Report

PAPER_COLUMNS = 5


class ScalingTableReport(Report):
    """Index/value pairs laid out column-major in five side-by-side blocks."""

    def __init__(self, table: ScalingTable, columns: int = PAPER_COLUMNS):
        self.table = table
        kind = table.kind
        index_name = kind.index_name
        value_name = f"{kind.value}({'n' if index_name == 'n' else 'Q'})"

        entries = table.entries
        rows_per_block = max(1, math.ceil(len(entries) / columns))
        grid = []
        for row in range(rows_per_block):
            line = []
            for block in range(columns):
                i = block * rows_per_block + row
                if i < len(entries):
                    index, value = entries[i]
                    line.extend([index, format_fixed(value, 3)])
                else:
                    line.extend(["", ""])
            grid.append(line)

        footer = None
        if kind.index_name == 'Q':
            footer = "Sample size n = 4Q+1"

        super().__init__(
            f"Values of {kind.value} ({table.approximation})",
            None,
            tabulate(grid, headers=[index_name, value_name] * columns, tablefmt="simple", disable_numparse=True),
            footer,
        )

    def to_dict(self):
        return {index: value for index, value in self.table.entries}
