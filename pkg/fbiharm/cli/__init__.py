"""
CLI: run configuration, grid runner and YAML reports.
"""

from .config import FamilyConstants, RunConfig, Sampling, Tolerances, load_config, parse_config
from .report import REPORT_FORMAT, CheckSummary, Report, comparable, dump_document, emit_report, load_report
from .runner import POINT_CHECKS, CheckValue, PointContext, prepare_scenario, run_check

__all__ = [
    # Configuration
    "RunConfig",
    "Sampling",
    "Tolerances",
    "FamilyConstants",
    "parse_config",
    "load_config",
    # Runner
    "CheckValue",
    "PointContext",
    "POINT_CHECKS",
    "prepare_scenario",
    "run_check",
    # Reports
    "REPORT_FORMAT",
    "CheckSummary",
    "Report",
    "dump_document",
    "emit_report",
    "load_report",
    "comparable",
]
