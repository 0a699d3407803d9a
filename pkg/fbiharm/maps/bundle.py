"""Per-point jet bundle of a map: φ, its derivatives and both geometries along it."""

import logging
from functools import cached_property
from typing import Sequence

import numpy as np

from ..config import get_engine_config
from ..errors import TargetDomainEscapeError
from ..geometry import ChartJets, CurvaturePack
from ..jets import Jet, compose, eval_expressions, jeinsum
from .definitions import SmoothMapDef

logger = logging.getLogger(__name__)


class MapJetBundle:
    """
    Jets of φ at a source point together with source and target geometry.

    Target quantities are computed as jets in target coordinates at φ(p) and
    carried back to source coordinates by jet composition, so every field along
    φ stays differentiable to the order the bundle was built with.

    Args:
        smooth_map: The map.
        point: Source point inside the source chart domain.
        order: Jet order K (defaults to the engine configuration).
    """

    def __init__(self, smooth_map: SmoothMapDef, point: Sequence[float], order: int | None = None):
        self.map = smooth_map
        self.order = get_engine_config().jet_order if order is None else order
        self.source = ChartJets(smooth_map.source, point, self.order)
        self.point = self.source.point
        self.coordinates = self.source.coordinates
        self.phi = eval_expressions(smooth_map.components, self.coordinates)
        self.image = np.asarray(self.phi.value, dtype=float)
        if not smooth_map.target.domain.contains(self.image):
            raise TargetDomainEscapeError(self.point, self.image)

    @cached_property
    def differential(self) -> Jet:
        """dφ[α, i] = ∂_i φ^α."""
        return self.phi.gradient()

    @cached_property
    def target(self) -> ChartJets:
        return ChartJets(self.map.target, self.image, self.order - 1)

    @cached_property
    def target_metric(self) -> Jet:
        """h_αβ∘φ as jets in source coordinates."""
        return self.map.target.metric_jets(self.phi)

    @cached_property
    def target_christoffel(self) -> Jet:
        """Γ^N∘φ as jets in source coordinates (order K−2)."""
        return compose(self.target.christoffel, self.phi)

    @cached_property
    def target_curvature(self) -> CurvaturePack:
        return self.target.curvature_pack()

    @cached_property
    def image_metric(self) -> np.ndarray:
        return self.target.metric.value

    @cached_property
    def second_fundamental_form(self) -> Jet:
        """(∇dφ)^α_ij = ∂_ij φ^α − Γ^k_ij ∂_k φ^α + Γ^N,α_βγ ∂_iφ^β ∂_jφ^γ."""
        dphi = self.differential
        return (
            dphi.gradient()
            - jeinsum("kij,ak->aij", self.source.christoffel, dphi)
            + jeinsum("abc,bi,cj->aij", self.target_christoffel, dphi, dphi)
        )

    @cached_property
    def tension(self) -> Jet:
        """τ(φ) as jets of order K−2."""
        return jeinsum("ij,aij->a", self.source.inverse, self.second_fundamental_form)

    def target_norm(self, vector) -> float:
        v = np.asarray(vector, dtype=float)
        return float(np.sqrt(max(v @ self.image_metric @ v, 0.0)))

    @cached_property
    def energy_density(self) -> float:
        """‖dφ‖² = g^{ij} h_αβ ∂_iφ^α ∂_jφ^β."""
        dphi = self.differential.value
        return float(np.einsum("ij,ab,ai,bj->", self.source.inverse.value, self.image_metric, dphi, dphi))

    def residual_scale(self) -> float:
        """max(1, ‖τ‖, ‖dφ‖²) used by relative pass rules."""
        return max(1.0, self.target_norm(self.tension.value), self.energy_density)


def map_jets(smooth_map: SmoothMapDef, point: Sequence[float], order: int | None = None) -> MapJetBundle:
    return MapJetBundle(smooth_map, point, order)


__all__ = ["MapJetBundle", "map_jets"]
