# stdlib
from typing import Optional

# 3rd-party
import pandas as pd
from tabulate import tabulate

# Local
from summstat.utils import format_number
from summstat.core.model import Estimate, MethodId, ScenarioInput
from .report_base import Report

CSV_HEADER = ['scenario', 'n', 'mean', 'sd', 'mean_method', 'sd_method', 'flags']


def _fmt(value) -> str:
    return format_number(value) if value is not None else "-"


def _method(method: Optional[MethodId]) -> str:
    return f"{method.token} ({method.description})" if method else "-"


class EstimateReport(Report):
    def __init__(self, input: ScenarioInput, estimate: Estimate):
        self.input = input
        self.estimate = estimate

        reported = ", ".join(
            f"{name}={format_number(getattr(input, name))}" for name in input.scenario.fields
        )
        table = [
            ["Scenario", f"{estimate.scenario.value} ({estimate.scenario.description})"],
            ["n", input.n],
            ["Mean", _fmt(estimate.mean)],
            ["SD", _fmt(estimate.sd)],
            ["Mean method", _method(estimate.mean_method)],
            ["SD method", _method(estimate.sd_method)],
            ["Flags", ", ".join(sorted(f.value for f in estimate.flags)) or "-"],
        ]

        super().__init__(
            "Estimated sample mean and SD",
            f"Reported: {reported}",
            tabulate(table, tablefmt="plain"),
            None,
        )

    def to_csv_str(self) -> str:
        est = self.estimate
        row = [
            est.scenario.value,
            self.input.n,
            format_number(est.mean) if est.mean is not None else "",
            format_number(est.sd) if est.sd is not None else "",
            est.mean_method.token if est.mean_method else "",
            est.sd_method.token if est.sd_method else "",
            ";".join(sorted(f.value for f in est.flags)),
        ]
        return pd.DataFrame([row], columns=CSV_HEADER).to_csv(index=False, lineterminator="\n")

    def to_dict(self):
        ret = self.estimate.to_dict()
        ret['n'] = self.input.n
        return ret
