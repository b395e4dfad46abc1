from .report_base import Report
from .estimate_report import EstimateReport
from .scaling_table_report import ScalingTableReport
from .simulation_report import SimulationSummary
