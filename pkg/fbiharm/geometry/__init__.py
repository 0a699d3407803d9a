"""
Geometry: metric charts, Levi-Civita connection, curvature and intrinsic operators.
"""

from .chart import CoordinateBox, MetricChart, euclidean_chart, hyperbolic_chart, sphere_chart
from .levi_civita import (
    christoffel_jets,
    gradient_jets,
    inverse_metric,
    laplacian_jets,
    ricci_jets,
    ricci_operator_jets,
    riemann_jets,
)
from .operators import (
    ChartJets,
    CurvaturePack,
    MetricSample,
    christoffel,
    curvature_pack,
    grad_field,
    laplace_beltrami,
    metric_at,
)

__all__ = [
    # Charts
    "CoordinateBox",
    "MetricChart",
    "euclidean_chart",
    "sphere_chart",
    "hyperbolic_chart",
    # Jet-level calculus
    "inverse_metric",
    "christoffel_jets",
    "riemann_jets",
    "ricci_jets",
    "ricci_operator_jets",
    "gradient_jets",
    "laplacian_jets",
    # Point operators
    "ChartJets",
    "CurvaturePack",
    "MetricSample",
    "metric_at",
    "christoffel",
    "curvature_pack",
    "grad_field",
    "laplace_beltrami",
]
