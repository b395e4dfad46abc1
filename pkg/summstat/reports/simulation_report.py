# stdlib
from typing import List

# 3rd-party
from tabulate import tabulate

# Local
from summstat.core.model import SimulationCell
from .report_base import Report


class SimulationSummary(Report):
    def __init__(self, cells: List[SimulationCell], study_name: str):
        self.cells = cells

        table = []
        for cell in cells:
            table.append([
                cell.dist,
                cell.n,
                cell.scenario.value,
                cell.method.token,
                f"{cell.avg_rel_err_mean * 100:+.2f}% ± {cell.se_rel_err_mean * 100:.2f}",
                f"{cell.avg_rel_err_sd * 100:+.2f}% ± {cell.se_rel_err_sd * 100:.2f}",
                cell.discarded,
            ])

        discarded = sum(
            {(c.dist, c.n): c.discarded for c in cells}.values()
        )
        footer = None
        if discarded > 0:
            footer = f"{discarded} replication(s) discarded for zero true moments"

        seeds = sorted({c.seed_lineage.master_seed for c in cells})
        super().__init__(
            f"Simulation study: {study_name}",
            f"{len(cells)} cells, reps={cells[0].reps if cells else 0}, seed={', '.join(map(str, seeds))}",
            tabulate(
                table,
                headers=["Distribution", "n", "Scenario", "SD method", "Mean rel. err", "SD rel. err", "Discarded"],
            ),
            footer,
        )

    def to_dict(self):
        return {
            f"{c.dist}/{c.n}/{c.scenario.value}/{c.method.token}": {
                "avg_rel_err_mean": c.avg_rel_err_mean,
                "avg_rel_err_sd": c.avg_rel_err_sd,
                "se_rel_err_mean": c.se_rel_err_mean,
                "se_rel_err_sd": c.se_rel_err_sd,
                "seed_lineage": str(c.seed_lineage),
            }
            for c in self.cells
        }
