"""Report documents: per-check aggregates plus engine metadata, stored as YAML."""

import logging
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
import yaml

from .. import __version__
from ..scenarios import Scenario

if TYPE_CHECKING:
    from .config import RunConfig

logger = logging.getLogger(__name__)

REPORT_FORMAT = "fbiharm-report/1"
# excluded when comparing reports for determinism
VOLATILE_KEYS = ("generated_at",)


@dataclass
class CheckSummary:
    """Aggregate of one check over all sample points."""

    check: str
    expectation: str = "none"
    tolerance: float = 0.0
    floor: float | None = None
    points: int = 0
    max_residual: float | None = None
    mean_residual: float | None = None
    worst_point: list[float] | None = None
    passed: bool = False
    error: str | None = None
    details: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "expectation": self.expectation,
            "passed": self.passed,
            "tolerance": self.tolerance,
        }
        if self.floor is not None:
            out["floor"] = self.floor
        out.update(
            points=self.points,
            max_residual=self.max_residual,
            mean_residual=self.mean_residual,
            worst_point=self.worst_point,
        )
        if self.details:
            out["details"] = dict(self.details)
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class Report:
    """Outcome of one run; passed is the exit-status contract."""

    engine: dict[str, Any]
    scenario: dict[str, Any]
    checks: dict[str, CheckSummary] = field(default_factory=dict)
    generated_at: str = ""

    @classmethod
    def start(cls, config: "RunConfig", scenario: Scenario) -> "Report":
        engine = {
            "version": __version__,
            "jet_order": config.jet_order,
            "seed": config.sampling.seed,
            "sample_count": config.sampling.count,
            "tolerance": config.tolerances.zero,
            "nonzero_floor": config.tolerances.nonzero_floor,
        }
        echo = scenario.to_dict()
        echo["expected"] = {e.check: e.to_text() for e in scenario.expected}
        return cls(
            engine=engine,
            scenario=echo,
            generated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )

    @property
    def passed(self) -> bool:
        return all(c.passed and c.error is None for c in self.checks.values())

    def to_document(self) -> dict:
        return _plain(
            {
                "format": REPORT_FORMAT,
                "generated_at": self.generated_at,
                "passed": self.passed,
                "engine": self.engine,
                "scenario": self.scenario,
                "checks": {name: c.to_dict() for name, c in self.checks.items()},
            }
        )


def _plain(value):
    """numpy scalars and arrays to built-in types, recursively."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


class _ReportDumper(yaml.SafeDumper):
    pass


def _represent_float(dumper: yaml.SafeDumper, value: float):
    """17 significant digits in a form the YAML float resolver reads back as float."""
    if math.isnan(value):
        text = ".nan"
    elif math.isinf(value):
        text = ".inf" if value > 0 else "-.inf"
    else:
        text = format(value, ".17g")
        mantissa, _, exponent = text.partition("e")
        if "." not in mantissa:
            mantissa += ".0"
        text = f"{mantissa}e{exponent}" if exponent else mantissa
    return dumper.represent_scalar("tag:yaml.org,2002:float", text)


_ReportDumper.add_representer(float, _represent_float)


def dump_document(document: dict) -> str:
    return yaml.dump(_plain(document), Dumper=_ReportDumper, sort_keys=False, allow_unicode=True)


def emit_report(report: Report, path: str | Path) -> None:
    """Write the report; I/O errors propagate."""
    Path(path).write_text(dump_document(report.to_document()), encoding="utf-8")
    logger.info("report written to %s", path)


def load_report(path: str | Path) -> dict:
    return yaml.safe_load(Path(path).read_text(encoding="utf-8"))


def comparable(document: dict) -> dict:
    """The document without volatile keys."""
    return {k: v for k, v in document.items() if k not in VOLATILE_KEYS}


__all__ = [
    "REPORT_FORMAT",
    "VOLATILE_KEYS",
    "CheckSummary",
    "Report",
    "dump_document",
    "emit_report",
    "load_report",
    "comparable",
]
