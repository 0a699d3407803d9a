"""Intrinsic operators of a MetricChart evaluated at a point."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from ..config import get_engine_config
from ..errors import DegenerateMetricError
from ..jets import ExprNode, Jet, eval_expression, seed_jets
from .chart import MetricChart
from .levi_civita import (
    christoffel_jets,
    gradient_jets,
    inverse_metric,
    laplacian_jets,
    ricci_jets,
    ricci_operator_jets,
    riemann_jets,
)

logger = logging.getLogger(__name__)


class MetricSample(NamedTuple):
    metric: np.ndarray
    inverse: np.ndarray
    determinant: float


@dataclass(frozen=True)
class CurvaturePack:
    """Christoffel symbols and curvature of a chart at one point."""

    point: tuple[float, ...]
    christoffel: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    ricci_operator: np.ndarray
    scalar: float

    def to_dict(self) -> dict:
        return {
            "point": list(self.point),
            "christoffel": self.christoffel.tolist(),
            "riemann": self.riemann.tolist(),
            "ricci": self.ricci.tolist(),
            "ricci_operator": self.ricci_operator.tolist(),
            "scalar": self.scalar,
        }


def _check_determinant(point, metric: np.ndarray) -> float:
    det = float(np.linalg.det(metric))
    if det <= get_engine_config().degenerate_threshold:
        raise DegenerateMetricError(point, det)
    return det


class ChartJets:
    """
    Metric jets of a chart at a point, with lazily derived curvature jets.

    Args:
        chart: The chart.
        point: Expansion point inside the chart domain.
        order: Jet order of the metric; Christoffel symbols carry order−1,
            curvature order−2.
    """

    def __init__(self, chart: MetricChart, point: Sequence[float], order: int):
        self.chart = chart
        self.point = chart.require_inside(point)
        self.order = order
        self.coordinates = seed_jets(self.point, chart.dim, order)
        self.metric = chart.metric_jets(self.coordinates)
        self.determinant = _check_determinant(self.point, self.metric.value)

    @cached_property
    def inverse(self) -> Jet:
        return inverse_metric(self.metric)

    @cached_property
    def christoffel(self) -> Jet:
        return christoffel_jets(self.metric, self.inverse)

    @cached_property
    def riemann(self) -> Jet:
        return riemann_jets(self.christoffel)

    @cached_property
    def ricci(self) -> Jet:
        return ricci_jets(self.riemann)

    @cached_property
    def ricci_operator(self) -> Jet:
        return ricci_operator_jets(self.inverse, self.ricci)

    def field(self, expression: ExprNode) -> Jet:
        return eval_expression(expression, self.coordinates)

    def curvature_pack(self) -> CurvaturePack:
        ricop = self.ricci_operator.value
        return CurvaturePack(
            point=tuple(float(v) for v in self.point),
            christoffel=self.christoffel.value,
            riemann=self.riemann.value,
            ricci=self.ricci.value,
            ricci_operator=ricop,
            scalar=float(np.trace(ricop)),
        )


def _expression_of(field) -> ExprNode:
    return field if isinstance(field, ExprNode) else field.expression


def metric_at(chart: MetricChart, point: Sequence[float]) -> MetricSample:
    """
    Evaluate the metric, its inverse and determinant at a point.

    Raises:
        OutOfDomainError: The point is outside the chart domain.
        DegenerateMetricError: det g ≤ the degenerate threshold.
    """
    p = chart.require_inside(point)
    g = chart.metric_values(p)
    det = _check_determinant(p, g)
    inverse = np.linalg.solve(g, np.eye(chart.dim))
    return MetricSample(g, 0.5 * (inverse + inverse.T), det)


def christoffel(chart: MetricChart, point: Sequence[float]) -> np.ndarray:
    """Γ^k_ij at a point, indexed [k, i, j]."""
    return ChartJets(chart, point, 1).christoffel.value


def curvature_pack(chart: MetricChart, point: Sequence[float]) -> CurvaturePack:
    return ChartJets(chart, point, 2).curvature_pack()


def grad_field(chart: MetricChart, field, point: Sequence[float]) -> np.ndarray:
    """(grad f)^i = g^{ij} ∂_j f; field is a ScalarFieldDef or an expression."""
    jets = ChartJets(chart, point, 1)
    return gradient_jets(jets.field(_expression_of(field)), jets.inverse).value


def laplace_beltrami(chart: MetricChart, field, point: Sequence[float]) -> float:
    """Δf = g^{ij}(∂_i∂_j f − Γ^k_ij ∂_k f), positive on exp."""
    jets = ChartJets(chart, point, 2)
    u = jets.field(_expression_of(field))
    return float(laplacian_jets(u, jets.inverse, jets.christoffel).value)


__all__ = [
    "MetricSample",
    "CurvaturePack",
    "ChartJets",
    "metric_at",
    "christoffel",
    "curvature_pack",
    "grad_field",
    "laplace_beltrami",
]
