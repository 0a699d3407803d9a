"""Residual systems of f-biharmonic, biharmonic and conformal hypersurfaces.

Every system returns a ResidualPair (r₁ normal, r₂ tangent in source coordinates).
Laplacians and gradients are taken with respect to the induced metric and act on
the jet of H, so no sampled quantity is ever differentiated numerically.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..config import get_engine_config
from ..errors import DescriptorMismatchError, DimensionError
from ..geometry import gradient_jets, laplacian_jets
from ..jets import Jet
from ..maps import ScalarFieldDef
from .frame import HypersurfaceFrame

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResidualPair:
    """Residuals of one system at one point with their pass flags."""

    r1: float
    r2: np.ndarray
    r2_norm: float
    norm: float
    scale: float
    tolerance: float

    @classmethod
    def build(cls, frame: HypersurfaceFrame, r1: float, r2, tolerance: float | None = None) -> "ResidualPair":
        r2 = np.asarray(r2, dtype=float)
        r2_norm = frame.norm(r2)
        return cls(
            r1=float(r1),
            r2=r2,
            r2_norm=r2_norm,
            norm=float(np.hypot(r1, r2_norm)),
            scale=max(1.0, abs(frame.mean_curvature) * frame.squared_norm),
            tolerance=tolerance if tolerance is not None else get_engine_config().tolerance,
        )

    @property
    def r1_passed(self) -> bool:
        return abs(self.r1) <= self.tolerance * self.scale

    @property
    def r2_passed(self) -> bool:
        return self.r2_norm <= self.tolerance * self.scale

    @property
    def passed(self) -> bool:
        return self.norm <= self.tolerance * self.scale


def _grad(frame: HypersurfaceFrame, u: Jet) -> np.ndarray:
    return gradient_jets(u, frame.inverse_jets).value


def _lap(frame: HypersurfaceFrame, u: Jet) -> float:
    return float(laplacian_jets(u, frame.inverse_jets, frame.christoffel_jets).value)


def _weighted_system(
    frame: HypersurfaceFrame,
    weight: Jet,
    curvature: float,
    tangent: np.ndarray,
    tolerance: float | None,
) -> ResidualPair:
    """r₁ = Δ(wH) − wH[|A|² − curvature]; r₂ = A grad(wH) + wH[(m/2) grad H − tangent]."""
    mean = frame.mean_curvature_jets
    weighted = weight * mean
    wh = float(weighted.value)
    half_dim = frame.dimension / 2.0
    r1 = _lap(frame, weighted) - wh * (frame.squared_norm - curvature)
    r2 = frame.shape_operator @ _grad(frame, weighted) + wh * (half_dim * _grad(frame, mean) - tangent)
    return ResidualPair.build(frame, r1, r2, tolerance)


def _check_einstein(frame: HypersurfaceFrame, lam: float, limit: float | None) -> None:
    defect = float(np.max(np.abs(frame.target_ricci - lam * frame.image_metric)))
    if limit is None:
        limit = get_engine_config().einstein_tolerance
    if defect > limit:
        raise DescriptorMismatchError(
            f"target is not Einstein with λ={lam:g} at φ(p): ‖Ric − λh‖∞ = {defect:.3e} > {limit:g}"
        )


def _require_surface(frame: HypersurfaceFrame, system: str) -> None:
    if frame.dimension != 2:
        raise DimensionError(f"{system} is defined for surfaces only, got dimension {frame.dimension}")


def residual_fbh2(frame: HypersurfaceFrame, f: ScalarFieldDef, tolerance: float | None = None) -> ResidualPair:
    """
    f-biharmonic hypersurface system in a general ambient space.

    r₁ = Δ(fH) − fH[|A|² − Ric^N(ξ,ξ)]
    r₂ = A grad(fH) + fH[(m/2) grad H − (Ric^N ξ)^⊤]
    """
    fj = f.jets(frame.coordinates)
    return _weighted_system(frame, fj, frame.ricci_normal, frame.ricci_tangent, tolerance)


def residual_fbh_unscaled(frame: HypersurfaceFrame, f: ScalarFieldDef, tolerance: float | None = None) -> ResidualPair:
    """
    The same system divided by f.

    r₁ = ΔH − H|A|² + H Ric^N(ξ,ξ) + H Δf/f + 2⟨grad ln f, grad H⟩
    r₂ = A grad H + (m/2) H grad H − H (Ric^N ξ)^⊤ + H A(grad ln f)
    """
    fj = f.jets(frame.coordinates)
    mean = frame.mean_curvature_jets
    h = frame.mean_curvature
    f0 = float(fj.value)
    grad_h = _grad(frame, mean)
    grad_log_f = _grad(frame, fj) / f0
    a = frame.shape_operator
    r1 = (
        _lap(frame, mean)
        - h * frame.squared_norm
        + h * frame.ricci_normal
        + h * _lap(frame, fj) / f0
        + 2.0 * frame.inner(grad_log_f, grad_h)
    )
    r2 = (
        a @ grad_h
        + (frame.dimension / 2.0) * h * grad_h
        - h * frame.ricci_tangent
        + h * (a @ grad_log_f)
    )
    return ResidualPair.build(frame, r1, r2, tolerance)


def residual_einstein(
    frame: HypersurfaceFrame,
    f: ScalarFieldDef,
    lam: float,
    tolerance: float | None = None,
    einstein_tolerance: float | None = None,
) -> ResidualPair:
    """
    System for an Einstein ambient space Ric^N = λh.

    einstein_tolerance bounds ‖Ric − λh‖∞ at φ(p); the engine setting is used when omitted.

    Raises:
        DescriptorMismatchError: The target is not Einstein with this λ at φ(p).
    """
    _check_einstein(frame, lam, einstein_tolerance)
    fj = f.jets(frame.coordinates)
    return _weighted_system(frame, fj, lam, np.zeros(frame.dimension), tolerance)


def residual_spaceform(
    frame: HypersurfaceFrame,
    f: ScalarFieldDef,
    curvature: float,
    tolerance: float | None = None,
    einstein_tolerance: float | None = None,
) -> ResidualPair:
    """Space form of sectional curvature C: the Einstein system with λ = mC."""
    return residual_einstein(frame, f, frame.dimension * curvature, tolerance, einstein_tolerance)


def residual_biharmonic(frame: HypersurfaceFrame, tolerance: float | None = None) -> ResidualPair:
    """
    Biharmonic hypersurface system.

    r₁ = ΔH − H|A|² + H Ric^N(ξ,ξ)
    r₂ = 2A grad H + (m/2) grad H² − 2H (Ric^N ξ)^⊤
    """
    mean = frame.mean_curvature_jets
    h = frame.mean_curvature
    r1 = _lap(frame, mean) - h * frame.squared_norm + h * frame.ricci_normal
    r2 = (
        2.0 * (frame.shape_operator @ _grad(frame, mean))
        + (frame.dimension / 2.0) * _grad(frame, mean * mean)
        - 2.0 * h * frame.ricci_tangent
    )
    return ResidualPair.build(frame, r1, r2, tolerance)


def residual_conformal_immersion(
    frame: HypersurfaceFrame, lambda_sq: ScalarFieldDef, tolerance: float | None = None
) -> ResidualPair:
    """
    Biharmonic conformal immersion of a surface, φ*h = λ²ḡ.

    r₁ = Δ(λ²H) − λ²H[|A|² − Ric^N(ξ,ξ)]
    r₂ = A grad(λ²H) + λ²H[grad H − (Ric^N ξ)^⊤]

    Raises:
        DimensionError: The source is not two-dimensional.
    """
    _require_surface(frame, "the conformal immersion system")
    lj = lambda_sq.jets(frame.coordinates)
    return _weighted_system(frame, lj, frame.ricci_normal, frame.ricci_tangent, tolerance)


def residual_conformal_spaceform(
    frame: HypersurfaceFrame,
    lambda_sq: ScalarFieldDef,
    curvature: float,
    tolerance: float | None = None,
    einstein_tolerance: float | None = None,
) -> ResidualPair:
    """
    Conformal immersion of a surface into a 3-dimensional space form.

    r₁ = Δ(λ²H) − λ²H(|A|² − 2C)
    r₂ = A grad(λ²H) + λ²H grad H
    """
    _require_surface(frame, "the conformal space-form system")
    _check_einstein(frame, 2.0 * curvature, einstein_tolerance)
    lj = lambda_sq.jets(frame.coordinates)
    return _weighted_system(frame, lj, 2.0 * curvature, np.zeros(2), tolerance)


def residual_conformal_unscaled(
    frame: HypersurfaceFrame, lambda_sq: ScalarFieldDef, tolerance: float | None = None
) -> ResidualPair:
    """
    Conformal immersion system before multiplying by λ².

    r₁ = ΔH − H[|A|² − Ric^N(ξ,ξ) − Δλ²/λ²] + 4⟨grad ln λ, grad H⟩
    r₂ = A grad H + H[grad H − (Ric^N ξ)^⊤ + 2A grad ln λ]
    """
    _require_surface(frame, "the unscaled conformal immersion system")
    lj = lambda_sq.jets(frame.coordinates)
    l0 = float(lj.value)
    mean = frame.mean_curvature_jets
    h = frame.mean_curvature
    grad_h = _grad(frame, mean)
    grad_log_lambda = _grad(frame, lj) / (2.0 * l0)
    a = frame.shape_operator
    r1 = (
        _lap(frame, mean)
        - h * (frame.squared_norm - frame.ricci_normal - _lap(frame, lj) / l0)
        + 4.0 * frame.inner(grad_log_lambda, grad_h)
    )
    r2 = a @ grad_h + h * (grad_h - frame.ricci_tangent + 2.0 * (a @ grad_log_lambda))
    return ResidualPair.build(frame, r1, r2, tolerance)


def pseudo_umbilical_defect(frame: HypersurfaceFrame) -> float:
    """max over coordinate directions X of ‖H·A(X) − H²X‖_g."""
    h = frame.mean_curvature
    m = frame.dimension
    identity = np.eye(m)
    return max(frame.norm(h * frame.shape_operator[:, k] - h * h * identity[:, k]) for k in range(m))


__all__ = [
    "ResidualPair",
    "residual_fbh2",
    "residual_fbh_unscaled",
    "residual_einstein",
    "residual_spaceform",
    "residual_biharmonic",
    "residual_conformal_immersion",
    "residual_conformal_spaceform",
    "residual_conformal_unscaled",
    "pseudo_umbilical_defect",
]
