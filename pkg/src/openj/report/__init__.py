"""Risk colors, report export, and headless figure rendering."""

from openj.report.colors import (
    RiskColor,
    normalized_risk,
    risk_color,
    segment_risk_colors,
)
from openj.report.export import (
    CSV_COLUMNS,
    build_report,
    export_report,
    validate_report,
)

__all__ = [
    "RiskColor",
    "normalized_risk",
    "risk_color",
    "segment_risk_colors",
    "CSV_COLUMNS",
    "build_report",
    "export_report",
    "validate_report",
]
