"""Codimension-one frame: unit normal, shape operator and mean curvature as jets."""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..config import get_engine_config
from ..errors import DimensionError, ImmersionDegenerateError, InvalidArgumentError
from ..geometry import christoffel_jets, inverse_metric
from ..jets import Jet, jeinsum, jet_det, jet_elementary, stack
from ..maps import MapJetBundle, SmoothMapDef, pullback_derivative

logger = logging.getLogger(__name__)

AMBIENT_KINDS = ("general", "einstein", "space_form")


@dataclass(frozen=True)
class AmbientDescriptor:
    """What is known about the target's curvature: general, einstein(λ) or space_form(C)."""

    kind: str = "general"
    value: float = 0.0

    def __post_init__(self):
        if self.kind not in AMBIENT_KINDS:
            raise InvalidArgumentError(f"unknown ambient kind '{self.kind}', expected one of {AMBIENT_KINDS}")

    @classmethod
    def general(cls) -> "AmbientDescriptor":
        return cls("general", 0.0)

    @classmethod
    def einstein(cls, lam: float) -> "AmbientDescriptor":
        return cls("einstein", float(lam))

    @classmethod
    def space_form(cls, curvature: float) -> "AmbientDescriptor":
        return cls("space_form", float(curvature))

    def einstein_constant(self, target_dim: int) -> float | None:
        """λ with Ric = λh, if the descriptor implies one."""
        if self.kind == "einstein":
            return self.value
        if self.kind == "space_form":
            return (target_dim - 1) * self.value
        return None

    def to_text(self) -> str:
        return "general" if self.kind == "general" else f"{self.kind}({self.value:g})"


@dataclass
class HypersurfaceFrame:
    """Frame quantities at one point; the *_jets fields keep them differentiable."""

    point: np.ndarray
    orientation: int
    metric: np.ndarray
    metric_inverse: np.ndarray
    normal: np.ndarray
    shape_operator: np.ndarray
    mean_curvature: float
    squared_norm: float
    ricci_normal: float
    ricci_tangent: np.ndarray
    target_ricci: np.ndarray
    image_metric: np.ndarray

    bundle: MapJetBundle
    metric_jets: Jet
    inverse_jets: Jet
    christoffel_jets: Jet
    normal_jets: Jet
    shape_jets: Jet
    mean_curvature_jets: Jet

    @property
    def dimension(self) -> int:
        return self.metric.shape[0]

    @property
    def coordinates(self) -> Jet:
        return self.bundle.coordinates

    @property
    def curvature_gap(self) -> float:
        """|A|² − Ric^N(ξ,ξ); its sign is reported as a diagnostic only."""
        return self.squared_norm - self.ricci_normal

    def inner(self, u, v) -> float:
        return float(np.asarray(u) @ self.metric @ np.asarray(v))

    def norm(self, u) -> float:
        return float(np.sqrt(max(self.inner(u, u), 0.0)))

    def to_dict(self) -> dict:
        return {
            "point": self.point.tolist(),
            "orientation": self.orientation,
            "induced_metric": self.metric.tolist(),
            "normal": self.normal.tolist(),
            "shape_operator": self.shape_operator.tolist(),
            "mean_curvature": self.mean_curvature,
            "squared_norm": self.squared_norm,
            "ricci_normal": self.ricci_normal,
            "ricci_tangent": self.ricci_tangent.tolist(),
            "curvature_gap": self.curvature_gap,
        }


def _normal_covector(dphi: Jet) -> Jet:
    """ν_a = det[dφ(∂_1), …, dφ(∂_m), e_a] by cofactor expansion."""
    n = dphi.shape[0]
    entries = []
    for a in range(n):
        rows = [r for r in range(n) if r != a]
        minor = jet_det(dphi[rows])
        entries.append(minor if (a + n - 1) % 2 == 0 else -minor)
    return stack(entries)


def frame_at(
    smooth_map: SmoothMapDef,
    point: Sequence[float],
    orientation: int = 1,
    order: int | None = None,
    bundle: MapJetBundle | None = None,
) -> HypersurfaceFrame:
    """
    Build the hypersurface frame of an immersion at a point.

    The unit normal ξ makes (dφ(∂_1), …, dφ(∂_m), ξ) positively oriented (flipped
    when orientation is −1); A(X) = −(∇^N_X ξ)^⊤; all intrinsic quantities use the
    induced metric φ*h.

    Args:
        smooth_map: Immersion with target dimension = source dimension + 1.
        point: Source point.
        orientation: +1 or −1.
        order: Jet order (defaults to the engine configuration).
        bundle: Reuse an existing MapJetBundle at the same point.

    Raises:
        DimensionError: Not a hypersurface.
        ImmersionDegenerateError: dφ is rank deficient at the point.
    """
    m, n = smooth_map.source.dim, smooth_map.target.dim
    if n != m + 1:
        raise DimensionError(f"frame_at needs codimension one, got source {m} and target {n}")
    if orientation not in (1, -1):
        raise InvalidArgumentError(f"orientation must be +1 or -1, got {orientation}")
    b = bundle if bundle is not None else MapJetBundle(smooth_map, point, order)

    dphi = b.differential
    hphi = b.target_metric
    g = jeinsum("ab,ai,bj->ij", hphi, dphi, dphi)
    gram = float(np.linalg.det(g.value))
    if gram <= get_engine_config().degenerate_threshold:
        raise ImmersionDegenerateError(b.point, gram)
    ginv = inverse_metric(g)
    gamma = christoffel_jets(g, ginv)

    nu = _normal_covector(dphi)
    raised = jeinsum("ab,b->a", inverse_metric(hphi), nu)
    length = jet_elementary("sqrt", jeinsum("a,a->", nu, raised))
    xi = raised * (length.reciprocal() * float(orientation))

    dxi = pullback_derivative(b, xi)
    weingarten = jeinsum("ab,ai,bj->ij", hphi, dxi, dphi)  # h(∇_i ξ, dφ(∂_j))
    shape = -jeinsum("kj,ij->ki", ginv, weingarten)
    mean = jeinsum("ii->", shape) * (1.0 / m)
    squared = jeinsum("ki,ik->", shape, shape)

    ricci = b.target_curvature.ricci
    xi0 = xi.value
    g0 = g.value
    ricci_normal = float(xi0 @ ricci @ xi0)
    ricci_tangent = np.linalg.solve(g0, dphi.value.T @ (ricci @ xi0))

    logger.debug("frame at %s: H=%.6g |A|^2=%.6g", b.point, mean.value, squared.value)
    return HypersurfaceFrame(
        point=b.point,
        orientation=orientation,
        metric=g0,
        metric_inverse=ginv.value,
        normal=xi0,
        shape_operator=shape.value,
        mean_curvature=float(mean.value),
        squared_norm=float(squared.value),
        ricci_normal=ricci_normal,
        ricci_tangent=ricci_tangent,
        target_ricci=ricci,
        image_metric=b.image_metric,
        bundle=b,
        metric_jets=g,
        inverse_jets=ginv,
        christoffel_jets=gamma,
        normal_jets=xi,
        shape_jets=shape,
        mean_curvature_jets=mean,
    )


__all__ = ["AmbientDescriptor", "HypersurfaceFrame", "frame_at", "AMBIENT_KINDS"]
