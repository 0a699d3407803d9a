"""Jet pipeline versus finite differences of value-level evaluators."""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..config import get_engine_config
from ..errors import DimensionError, InvalidArgumentError
from ..geometry import ChartJets, MetricChart
from ..hypersurface import frame_at
from ..jets import extract_partial
from ..maps import MapJetBundle, SmoothMapDef
from ..scenarios import Scenario
from .finite_difference import FDSpec, fd_gradient, fd_hessian

logger = logging.getLogger(__name__)

QUANTITIES = ("christoffel", "ricci", "tension", "H-field")


@dataclass
class CrossValidationReport:
    """Largest jet-vs-FD deviation per quantity over the checked points."""

    tolerance: float
    points: int = 0
    deviations: dict[str, float] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)

    def passed_for(self, quantity: str) -> bool:
        return self.deviations[quantity] <= self.tolerance

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return all(self.passed_for(q) for q in self.deviations)

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "points": self.points,
            "deviations": dict(self.deviations),
            "passed": {q: self.passed_for(q) for q in self.deviations},
            "skipped": list(self.skipped),
        }


# -- value-level formulas ---------------------------------------------------


def _metric_derivatives(chart: MetricChart, p: np.ndarray, spec: FDSpec, second: bool = False):
    g = chart.metric_values(p)
    dg = fd_gradient(chart.metric_values, p, spec)  # dg[a, b, c] = ∂_c g_ab
    ddg = fd_hessian(chart.metric_values, p, spec) if second else None
    return g, dg, ddg


def fd_christoffel(chart: MetricChart, point: Sequence[float], spec: FDSpec | None = None) -> np.ndarray:
    """Γ^k_ij from finite differences of the metric values."""
    spec = spec or FDSpec.from_config()
    p = chart.require_inside(point)
    g, dg, _ = _metric_derivatives(chart, p, spec)
    ginv = np.linalg.inv(g)
    first_kind = 0.5 * (
        np.einsum("jli->lij", dg) + np.einsum("ilj->lij", dg) - np.einsum("ijl->lij", dg)
    )
    return np.einsum("kl,lij->kij", ginv, first_kind)


def fd_ricci(chart: MetricChart, point: Sequence[float], spec: FDSpec | None = None) -> np.ndarray:
    """Ric_jk = R^i_ijk from first and second finite differences of the metric."""
    spec = spec or FDSpec.from_config()
    p = chart.require_inside(point)
    g, dg, ddg = _metric_derivatives(chart, p, spec, second=True)
    ginv = np.linalg.inv(g)
    dginv = -np.einsum("ka,abm,bl->klm", ginv, dg, ginv)  # ∂_m g^{kl}
    first_kind = 0.5 * (
        np.einsum("jli->lij", dg) + np.einsum("ilj->lij", dg) - np.einsum("ijl->lij", dg)
    )
    d_first_kind = 0.5 * (
        np.einsum("jlim->lijm", ddg) + np.einsum("iljm->lijm", ddg) - np.einsum("ijlm->lijm", ddg)
    )
    gamma = np.einsum("kl,lij->kij", ginv, first_kind)
    dgamma = np.einsum("klm,lij->kijm", dginv, first_kind) + np.einsum("kl,lijm->kijm", ginv, d_first_kind)
    riemann = (
        np.einsum("ljki->lijk", dgamma)
        - np.einsum("likj->lijk", dgamma)
        + np.einsum("lim,mjk->lijk", gamma, gamma)
        - np.einsum("ljm,mik->lijk", gamma, gamma)
    )
    return np.einsum("iijk->jk", riemann)


def fd_tension(scenario: Scenario, point: Sequence[float], spec: FDSpec | None = None) -> np.ndarray:
    """τ^α = g^{ij}(∂_ijφ^α − Γ^k_ij ∂_kφ^α + Γ^N,α_βγ ∂_iφ^β ∂_jφ^γ) from finite differences."""
    spec = spec or FDSpec.from_config()
    smooth_map = scenario.map
    p = smooth_map.source.require_inside(point)
    dphi = fd_gradient(smooth_map.image, p, spec)
    ddphi = fd_hessian(smooth_map.image, p, spec)
    ginv = np.linalg.inv(smooth_map.source.metric_values(p))
    gamma = fd_christoffel(smooth_map.source, p, spec)
    gamma_target = fd_christoffel(smooth_map.target, smooth_map.image(p), spec)
    hessian = (
        ddphi
        - np.einsum("kij,ak->aij", gamma, dphi)
        + np.einsum("abc,bi,cj->aij", gamma_target, dphi, dphi)
    )
    return np.einsum("ij,aij->a", ginv, hessian)


def fd_mean_curvature(
    smooth_map: SmoothMapDef, point: Sequence[float], spec: FDSpec | None = None, orientation: int = 1
) -> float:
    """
    H = (1/m) g^{ij} h(∂_ijφ + Γ^N(∂_iφ, ∂_jφ), ξ) from finite differences of φ and h.

    ξ is the h-unit normal with det[dφ | ξ] of the sign of orientation, g the
    induced metric φ*h.

    Raises:
        DimensionError: Not a hypersurface.
    """
    spec = spec or FDSpec.from_config()
    m, n = smooth_map.source_dim, smooth_map.target_dim
    if n != m + 1:
        raise DimensionError(f"fd_mean_curvature needs codimension one, got source {m} and target {n}")
    p = smooth_map.source.require_inside(point)
    image = smooth_map.image(p)
    dphi = fd_gradient(smooth_map.image, p, spec)
    ddphi = fd_hessian(smooth_map.image, p, spec)
    h = smooth_map.target.metric_values(image)
    gamma_target = fd_christoffel(smooth_map.target, image, spec)

    _, _, vt = np.linalg.svd(dphi.T @ h)
    xi = vt[-1]
    xi = xi / np.sqrt(xi @ h @ xi)
    if np.linalg.det(np.column_stack([dphi, xi])) * orientation < 0:
        xi = -xi

    induced = dphi.T @ h @ dphi
    second = ddphi + np.einsum("abc,bi,cj->aij", gamma_target, dphi, dphi)
    form = np.einsum("aij,ab,b->ij", second, h, xi)
    return float(np.einsum("ij,ij->", np.linalg.inv(induced), form)) / m


# -- comparisons ------------------------------------------------------------


def _christoffel_deviation(scenario: Scenario, p: np.ndarray, spec: FDSpec) -> float:
    smooth_map = scenario.map
    image = smooth_map.image(p)
    deviation = 0.0
    for chart, q in ((smooth_map.source, p), (smooth_map.target, image)):
        jets = ChartJets(chart, q, 1).christoffel.value
        deviation = max(deviation, float(np.max(np.abs(jets - fd_christoffel(chart, q, spec)))))
    return deviation


def _ricci_deviation(scenario: Scenario, p: np.ndarray, spec: FDSpec) -> float:
    smooth_map = scenario.map
    image = smooth_map.image(p)
    deviation = 0.0
    for chart, q in ((smooth_map.source, p), (smooth_map.target, image)):
        jets = ChartJets(chart, q, 2).ricci.value
        deviation = max(deviation, float(np.max(np.abs(jets - fd_ricci(chart, q, spec)))))
    return deviation


def _tension_deviation(scenario: Scenario, p: np.ndarray, spec: FDSpec) -> float:
    jets = MapJetBundle(scenario.map, p, 2).tension.value
    return float(np.max(np.abs(jets - fd_tension(scenario, p, spec))))


def _mean_curvature_deviation(scenario: Scenario, p: np.ndarray, spec: FDSpec) -> float:
    """
    The jet value of H against fd_mean_curvature, and its jet gradient and Hessian
    against differences of the frame value H(q).
    """
    smooth_map = scenario.map
    mean = frame_at(smooth_map, p, order=4).mean_curvature_jets

    def value(q):
        return frame_at(smooth_map, q, order=3).mean_curvature

    m = smooth_map.source_dim
    eye = np.eye(m, dtype=int)
    jet_grad = np.array([extract_partial(mean, eye[i]) for i in range(m)])
    jet_hess = np.array([[extract_partial(mean, eye[i] + eye[j]) for j in range(m)] for i in range(m)])
    return max(
        abs(float(mean.value) - fd_mean_curvature(smooth_map, p, spec)),
        float(np.max(np.abs(jet_grad - fd_gradient(value, p, spec)))),
        float(np.max(np.abs(jet_hess - fd_hessian(value, p, spec)))),
    )


_COMPARISONS = {
    "christoffel": _christoffel_deviation,
    "ricci": _ricci_deviation,
    "tension": _tension_deviation,
    "H-field": _mean_curvature_deviation,
}


def cross_validate(
    scenario: Scenario,
    quantities: Iterable[str] = QUANTITIES,
    points: Iterable[Sequence[float]] = (),
    tol: float | None = None,
    spec: FDSpec | None = None,
) -> CrossValidationReport:
    """
    Compare jet-derived quantities with finite differences at sample points.

    Christoffel symbols and Ricci curvature are compared on the source chart at p
    and on the target chart at φ(p). The H-field is only defined for
    hypersurfaces; for other maps it is listed as skipped.

    Args:
        scenario: The scenario to check.
        quantities: Subset of christoffel, ricci, tension and H-field.
        points: Source points (defaults to the sample box center).
        tol: Allowed absolute deviation (defaults to the engine configuration).
        spec: Finite-difference settings.

    Raises:
        InvalidArgumentError: An unknown quantity was requested.
    """
    quantities = list(quantities)
    unknown = [q for q in quantities if q not in _COMPARISONS]
    if unknown:
        raise InvalidArgumentError(f"unknown cross-validation quantities {unknown}, expected {QUANTITIES}")
    pts = [np.asarray(p, dtype=float) for p in points] or [scenario.box.center()]
    spec = spec or FDSpec.from_config()
    report = CrossValidationReport(
        tolerance=tol if tol is not None else get_engine_config().cross_validate_tolerance,
        points=len(pts),
    )
    for quantity in quantities:
        if quantity == "H-field" and not scenario.map.is_hypersurface:
            report.skipped.append(quantity)
            continue
        compare = _COMPARISONS[quantity]
        report.deviations[quantity] = max(compare(scenario, p, spec) for p in pts)
        logger.debug("cross-validated %s on %s: %.3e", quantity, scenario.name, report.deviations[quantity])
    return report


__all__ = [
    "QUANTITIES",
    "CrossValidationReport",
    "fd_christoffel",
    "fd_ricci",
    "fd_tension",
    "fd_mean_curvature",
    "cross_validate",
]
