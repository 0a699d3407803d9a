"""Tension, bitension and f-bitension fields of a map."""

import logging
from typing import Sequence

import numpy as np

from ..geometry import gradient_jets, laplacian_jets
from ..jets import Jet, jeinsum
from .bundle import MapJetBundle
from .definitions import ScalarFieldDef, SmoothMapDef

logger = logging.getLogger(__name__)


def _bundle(smooth_map: SmoothMapDef, point, bundle: MapJetBundle | None) -> MapJetBundle:
    return bundle if bundle is not None else MapJetBundle(smooth_map, point)


def pullback_derivative(bundle: MapJetBundle, sigma: Jet) -> Jet:
    """D[α, i] = (∇^φ_{∂_i} σ)^α = ∂_i σ^α + Γ^N,α_βγ ∂_iφ^β σ^γ."""
    return sigma.gradient() + jeinsum(
        "abc,bi,c->ai", bundle.target_christoffel, bundle.differential, sigma
    )


def rough_laplacian(bundle: MapJetBundle, sigma: Jet) -> Jet:
    """Trace_g(∇^φ∇^φ − ∇^φ_{∇^M})σ for a vector field σ along φ."""
    first = pullback_derivative(bundle, sigma)  # first[α, j]
    second = first.gradient() + jeinsum(
        "abc,bi,cj->aji", bundle.target_christoffel, bundle.differential, first
    )  # second[α, j, i] = ∇_i ∇_j σ
    source = bundle.source
    return jeinsum("ij,aji->a", source.inverse, second) - jeinsum(
        "ij,kij,ak->a", source.inverse, source.christoffel, first
    )


def curvature_trace(bundle: MapJetBundle, sigma: np.ndarray) -> np.ndarray:
    """g^{ij} R^N(dφ(∂_i), σ)dφ(∂_j) at the bundle point."""
    dphi = bundle.differential.value
    return np.einsum(
        "ij,abcd,bi,c,dj->a",
        bundle.source.inverse.value,
        bundle.target_curvature.riemann,
        dphi,
        np.asarray(sigma, dtype=float),
        dphi,
    )


def tension_field(smooth_map: SmoothMapDef, point: Sequence[float], bundle: MapJetBundle | None = None) -> np.ndarray:
    """
    τ(φ) at a point, in target coordinates.

    Raises:
        TargetDomainEscapeError: φ(p) is outside the target chart.
    """
    return _bundle(smooth_map, point, bundle).tension.value


def pullback_connection_apply(
    smooth_map: SmoothMapDef,
    direction: Sequence[float],
    sigma: Jet,
    point: Sequence[float],
    bundle: MapJetBundle | None = None,
) -> np.ndarray:
    """
    (∇^φ_X σ) at a point.

    Args:
        smooth_map: The map φ.
        direction: Source tangent vector X (coordinate components).
        sigma: Vector field along φ as a Jet of shape (n,) seeded at the point.
        point: Source point.

    Raises:
        OrderExceededError: sigma carries no derivatives.
    """
    b = _bundle(smooth_map, point, bundle)
    return pullback_derivative(b, sigma).value @ np.asarray(direction, dtype=float)


def bitension_field(smooth_map: SmoothMapDef, point: Sequence[float], bundle: MapJetBundle | None = None) -> np.ndarray:
    """τ₂(φ) = Trace_g(∇^φ∇^φ − ∇^φ_{∇^M})τ − Trace_g R^N(dφ, τ)dφ."""
    b = _bundle(smooth_map, point, bundle)
    tau = b.tension
    return rough_laplacian(b, tau).value - curvature_trace(b, tau.value)


def f_bitension_field(
    smooth_map: SmoothMapDef,
    f: ScalarFieldDef,
    point: Sequence[float],
    bundle: MapJetBundle | None = None,
) -> np.ndarray:
    """
    τ₂,f(φ) = f·τ₂(φ) + (Δf)·τ(φ) + 2∇^φ_{grad f}τ(φ).

    Raises:
        PositivityError: f(p) ≤ 0.
    """
    b = _bundle(smooth_map, point, bundle)
    fj = f.jets(b.coordinates)
    source = b.source
    lap_f = float(laplacian_jets(fj, source.inverse, source.christoffel).value)
    grad_f = gradient_jets(fj, source.inverse).value
    tau = b.tension
    along_grad = pullback_derivative(b, tau).value @ grad_f
    return fj.value * bitension_field(smooth_map, point, b) + lap_f * tau.value + 2.0 * along_grad


__all__ = [
    "pullback_derivative",
    "rough_laplacian",
    "curvature_trace",
    "tension_field",
    "pullback_connection_apply",
    "bitension_field",
    "f_bitension_field",
]
