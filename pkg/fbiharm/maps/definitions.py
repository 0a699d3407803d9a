"""Symbolic descriptions of maps and scalar fields."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import InvalidArgumentError, PositivityError
from ..geometry import MetricChart
from ..jets import Const, ExprNode, Jet, as_expr, eval_expression, parse_expression


@dataclass(frozen=True)
class ScalarFieldDef:
    """
    A scalar field over source coordinates.

    Args:
        expression: The field as an expression.
        positive: When True, evaluation rejects nonpositive values.
        name: Label used in error messages.
    """

    expression: ExprNode
    positive: bool = True
    name: str = "f"

    @classmethod
    def constant(cls, value: float, name: str = "f") -> "ScalarFieldDef":
        return cls(Const(float(value)), positive=value > 0, name=name)

    @classmethod
    def parse(cls, text: str, dim: int | None = None, name: str = "f", positive: bool = True) -> "ScalarFieldDef":
        return cls(parse_expression(text, dim), positive=positive, name=name)

    def _check(self, point, value) -> None:
        if self.positive and not value > 0.0:
            raise PositivityError(self.name, point, float(value))

    def value(self, point: Sequence[float]) -> float:
        v = self.expression.evaluate(point)
        self._check(point, v)
        return v

    def jets(self, coordinates: Jet) -> Jet:
        """Jet of the field at the seeded point, positivity checked."""
        u = eval_expression(self.expression, coordinates)
        self._check(np.asarray(coordinates.value), u.value)
        return u

    def scaled(self, factor) -> "ScalarFieldDef":
        return ScalarFieldDef(self.expression * as_expr(factor), self.positive, self.name)

    def to_text(self) -> str:
        return self.expression.to_text()


@dataclass(frozen=True)
class SmoothMapDef:
    """
    A map φ between two charts given by its component expressions.

    Args:
        source: Chart of the domain (dimension m).
        target: Chart of the codomain (dimension n).
        components: n expressions over source coordinates.
        immersion: When True, dφ must have full rank at evaluated points.
        name: Label used in reports.
    """

    source: MetricChart
    target: MetricChart
    components: tuple[ExprNode, ...]
    immersion: bool = False
    name: str = "phi"

    def __post_init__(self):
        comps = tuple(as_expr(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.target.dim:
            raise InvalidArgumentError(
                f"map '{self.name}' has {len(comps)} components for a target of dimension {self.target.dim}"
            )
        if any(c.max_coordinate() >= self.source.dim for c in comps):
            raise InvalidArgumentError(
                f"map '{self.name}' uses coordinates beyond the source dimension {self.source.dim}"
            )

    @property
    def source_dim(self) -> int:
        return self.source.dim

    @property
    def target_dim(self) -> int:
        return self.target.dim

    @property
    def is_hypersurface(self) -> bool:
        return self.immersion and self.target.dim == self.source.dim + 1

    def image(self, point: Sequence[float]) -> np.ndarray:
        return np.array([c.evaluate(point) for c in self.components])

    def with_source(self, source: MetricChart) -> "SmoothMapDef":
        return SmoothMapDef(source, self.target, self.components, self.immersion, self.name)


__all__ = ["ScalarFieldDef", "SmoothMapDef"]
