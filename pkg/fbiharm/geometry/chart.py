"""Coordinate charts carrying a symbolic metric."""

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import InvalidArgumentError, OutOfDomainError, PositivityError
from ..jets import Const, Coord, ExprNode, Jet, eval_expressions, evaluate_tree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoordinateBox:
    """Open axis-aligned box lower < x < upper (bounds may be infinite)."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(float(v) for v in self.lower))
        object.__setattr__(self, "upper", tuple(float(v) for v in self.upper))
        if len(self.lower) != len(self.upper) or not self.lower:
            raise InvalidArgumentError("box bounds must be nonempty and of equal length")
        for lo, hi in zip(self.lower, self.upper):
            if not lo < hi:
                raise InvalidArgumentError(f"empty box side ({lo}, {hi})")

    @classmethod
    def unbounded(cls, dim: int) -> "CoordinateBox":
        return cls((-np.inf,) * dim, (np.inf,) * dim)

    @classmethod
    def cube(cls, dim: int, lower: float, upper: float) -> "CoordinateBox":
        return cls((lower,) * dim, (upper,) * dim)

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper)))

    def contains(self, point: Sequence[float]) -> bool:
        p = np.asarray(point, dtype=float)
        if p.shape != (self.dim,):
            return False
        return bool(np.all(np.asarray(self.lower) < p) and np.all(p < np.asarray(self.upper)))

    def encloses(self, other: "CoordinateBox") -> bool:
        """True when other lies inside this box (closure allowed on infinite sides)."""
        return all(
            a <= c and d <= b
            for a, b, c, d in zip(self.lower, self.upper, other.lower, other.upper)
        )

    def center(self) -> np.ndarray:
        if not self.is_finite:
            raise InvalidArgumentError("an unbounded box has no center")
        return (np.asarray(self.lower) + np.asarray(self.upper)) / 2.0


@dataclass(frozen=True)
class MetricChart:
    """
    A chart with metric components g_ij given as expressions.

    Args:
        name: Label used in diagnostics and reports.
        metric: dim×dim nested tuples of expressions; must be symmetric.
        domain: Coordinate box where the chart is valid.
        conformal_factors: Factors the metric was rescaled by; each must stay
            positive wherever the metric is evaluated.
    """

    name: str
    metric: tuple[tuple[ExprNode, ...], ...]
    domain: CoordinateBox = field(default=None)
    conformal_factors: tuple[ExprNode, ...] = ()

    def __post_init__(self):
        metric = tuple(tuple(row) for row in self.metric)
        object.__setattr__(self, "metric", metric)
        n = len(metric)
        if n == 0 or any(len(row) != n for row in metric):
            raise InvalidArgumentError(f"metric of chart '{self.name}' must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if metric[i][j] != metric[j][i]:
                    raise InvalidArgumentError(
                        f"metric of chart '{self.name}' is not symmetric at ({i}, {j})"
                    )
        if any(e.max_coordinate() >= n for row in metric for e in row):
            raise InvalidArgumentError(f"metric of chart '{self.name}' uses coordinates beyond x{n}")
        if self.domain is None:
            object.__setattr__(self, "domain", CoordinateBox.unbounded(n))
        elif self.domain.dim != n:
            raise InvalidArgumentError(f"domain of chart '{self.name}' has wrong dimension")

    @property
    def dim(self) -> int:
        return len(self.metric)

    def require_inside(self, point: Sequence[float]) -> np.ndarray:
        p = np.asarray(point, dtype=float)
        if not self.domain.contains(p):
            raise OutOfDomainError(self.name, p)
        return p

    def require_positive_factors(self, point: Sequence[float]) -> None:
        for factor in self.conformal_factors:
            value = float(factor.evaluate(point))
            if not value > 0.0:
                raise PositivityError("lambda^2", point, value)

    def metric_values(self, point: Sequence[float]) -> np.ndarray:
        self.require_positive_factors(point)
        return evaluate_tree(self.metric, point)

    def metric_jets(self, coordinates: Jet) -> Jet:
        self.require_positive_factors(coordinates.value)
        return eval_expressions(self.metric, coordinates)


def _diagonal_metric(dim: int, factor: ExprNode) -> tuple[tuple[ExprNode, ...], ...]:
    zero = Const(0.0)
    return tuple(tuple(factor if i == j else zero for j in range(dim)) for i in range(dim))


def euclidean_chart(dim: int, domain: CoordinateBox | None = None, name: str | None = None) -> MetricChart:
    """Flat ℝ^dim in Cartesian coordinates."""
    return MetricChart(name or f"R{dim}", _diagonal_metric(dim, Const(1.0)), domain)


def sphere_chart(
    dim: int, radius: float = 1.0, domain: CoordinateBox | None = None, name: str | None = None
) -> MetricChart:
    """S^dim(r) in stereographic coordinates: g = 4r⁴/(r²+|u|²)² δ."""
    if radius <= 0:
        raise InvalidArgumentError(f"sphere radius must be positive, got {radius}")
    r2 = radius * radius
    norm2 = sum((Coord(i) ** 2 for i in range(1, dim)), Coord(0) ** 2)
    factor = Const(4.0 * r2 * r2) / (r2 + norm2) ** 2
    return MetricChart(name or f"S{dim}({radius:g})", _diagonal_metric(dim, factor), domain)


def hyperbolic_chart(dim: int, domain: CoordinateBox | None = None, name: str | None = None) -> MetricChart:
    """H^dim in the upper half-space model: g = δ / x_n²."""
    if domain is None:
        domain = CoordinateBox((-np.inf,) * (dim - 1) + (0.0,), (np.inf,) * dim)
    factor = Const(1.0) / Coord(dim - 1) ** 2
    return MetricChart(name or f"H{dim}", _diagonal_metric(dim, factor), domain)


__all__ = [
    "CoordinateBox",
    "MetricChart",
    "euclidean_chart",
    "sphere_chart",
    "hyperbolic_chart",
]
