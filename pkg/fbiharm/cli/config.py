"""Run configuration documents (YAML) and their validation."""

import logging
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..config import get_engine_config
from ..errors import ConfigError, FbiharmError
from ..jets import parse_expression
from ..scenarios import CATALOGUE, CHECK_NAMES, parse_expectation

logger = logging.getLogger(__name__)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FamilyConstants(_Strict):
    """Constants of the cylinder weight family C₁e^{x₁/R} + C₂e^{−x₁/R}."""

    C1: float = 1.0
    C2: float = 0.0


class Sampling(_Strict):
    count: int = Field(default_factory=lambda: get_engine_config().sample_count, ge=1)
    seed: int = Field(default_factory=lambda: get_engine_config().seed)


class Tolerances(_Strict):
    zero: float = Field(default_factory=lambda: get_engine_config().tolerance, gt=0)
    nonzero_floor: float = Field(default_factory=lambda: get_engine_config().nonzero_floor, gt=0)
    einstein: float = Field(default_factory=lambda: get_engine_config().einstein_tolerance, gt=0)
    cross_validate: float = Field(default_factory=lambda: get_engine_config().cross_validate_tolerance, gt=0)


class RunConfig(_Strict):
    """
    One verification run.

    Example document::

        scenario: cylinder
        params: {m: 3, R: 1}
        f: "exp(x2/1)"
        checks: [fbh2, bhs]
    """

    scenario: str
    params: dict[str, Any] = Field(default_factory=dict)
    f: str | float | FamilyConstants | None = None
    checks: list[str] = Field(default_factory=list)
    jet_order: int = Field(default_factory=lambda: get_engine_config().jet_order, ge=1)
    sampling: Sampling = Field(default_factory=Sampling)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    expect: dict[str, Literal["zero", "nonzero"] | float] = Field(default_factory=dict)
    custom: dict[str, Any] | None = None
    workers: int = Field(default_factory=lambda: get_engine_config().workers, ge=1)
    output: str | None = None
    verbose: bool = False

    @field_validator("scenario")
    @classmethod
    def _known_scenario(cls, value: str) -> str:
        if value not in CATALOGUE:
            raise ValueError(f"unknown scenario '{value}', available: {sorted(CATALOGUE)}")
        return value

    @field_validator("checks")
    @classmethod
    def _known_checks(cls, value: list[str]) -> list[str]:
        for name in value:
            if name not in CHECK_NAMES:
                raise ValueError(f"unknown check '{name}', expected one of {list(CHECK_NAMES)}")
        return list(dict.fromkeys(value))

    @field_validator("f")
    @classmethod
    def _readable_weight(cls, value):
        if isinstance(value, str):
            try:
                parse_expression(value)
            except FbiharmError as exc:
                raise ValueError(str(exc)) from exc
        return value

    @field_validator("expect")
    @classmethod
    def _known_expectations(cls, value: dict) -> dict:
        for check, raw in value.items():
            try:
                parse_expectation(check, raw)
            except FbiharmError as exc:
                raise ValueError(str(exc)) from exc
        return value

    @model_validator(mode="after")
    def _scenario_blocks(self) -> "RunConfig":
        if self.scenario == "custom" and not self.custom:
            raise ValueError("scenario 'custom' needs a 'custom' block")
        if self.scenario != "custom" and self.custom:
            raise ValueError("a 'custom' block is only allowed with scenario 'custom'")
        if isinstance(self.f, FamilyConstants) and self.scenario != "cylinder":
            raise ValueError("weight family constants C1/C2 only apply to the cylinder scenario")
        return self

    def scenario_params(self) -> dict[str, Any]:
        """Parameters handed to build_scenario."""
        params = dict(self.custom or self.params)
        if isinstance(self.f, FamilyConstants):
            params.update(C1=self.f.C1, C2=self.f.C2)
        return params

    def with_checks(self, *names: str) -> "RunConfig":
        return self.model_copy(update={"checks": list(dict.fromkeys(self.checks + list(names)))})

    def with_overrides(self, **updates: Any) -> "RunConfig":
        """
        Copy with top-level values replaced, validated again.

        Raises:
            ConfigError: An override violates a field constraint.
        """
        data = self.model_dump()
        data.update(updates)
        try:
            return RunConfig.model_validate(data)
        except ValidationError as exc:
            first = exc.errors()[0]
            key = ".".join(str(part) for part in first["loc"])
            raise ConfigError(first["msg"], key=key or None, location="command line") from exc


def _line_of(node, loc: tuple) -> int | None:
    """1-based line of the YAML node addressed by a pydantic error location."""
    line = None
    for part in loc:
        if isinstance(node, yaml.MappingNode):
            match = next((pair for pair in node.value if pair[0].value == part), None)
            if match is None:
                break
            line = match[0].start_mark.line + 1
            node = match[1]
        elif isinstance(node, yaml.SequenceNode) and isinstance(part, int) and part < len(node.value):
            node = node.value[part]
            line = node.start_mark.line + 1
        else:
            break
    return line


def _key_of(loc: tuple, data: Any) -> str:
    """Dotted key path; list positions are rendered as the offending item."""
    parts = []
    node = data
    for part in loc:
        if isinstance(part, int) and isinstance(node, list) and part < len(node):
            parts.append(str(node[part]))
            node = node[part]
        else:
            parts.append(str(part))
            node = node.get(part) if isinstance(node, dict) else None
    return ".".join(parts)


def parse_config(text: str) -> RunConfig:
    """
    Parse and validate a run configuration document.

    Raises:
        ConfigError: Malformed YAML, unknown scenario, check or key, or an invalid
            value; the error names the offending key and its line.
    """
    try:
        data = yaml.safe_load(text)
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"malformed config: {exc}", location=f"line {mark.line + 1}" if mark else None) from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping at the top level", location="line 1")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = tuple(first["loc"])
        line = _line_of(root, loc)
        raise ConfigError(
            first["msg"],
            key=_key_of(loc, data) if loc else None,
            location=f"line {line}" if line else None,
        ) from exc


def load_config(path: str | Path) -> RunConfig:
    """Read a run configuration from a file."""
    logger.debug("loading run config from %s", path)
    return parse_config(Path(path).read_text(encoding="utf-8"))


__all__ = ["FamilyConstants", "Sampling", "Tolerances", "RunConfig", "parse_config", "load_config"]
