"""
Hypersurface: normal frame, shape operator and the residual systems built on them.
"""

from .frame import AMBIENT_KINDS, AmbientDescriptor, HypersurfaceFrame, frame_at
from .residuals import (
    ResidualPair,
    pseudo_umbilical_defect,
    residual_biharmonic,
    residual_conformal_immersion,
    residual_conformal_spaceform,
    residual_conformal_unscaled,
    residual_einstein,
    residual_fbh2,
    residual_fbh_unscaled,
    residual_spaceform,
)

__all__ = [
    # Frame
    "AMBIENT_KINDS",
    "AmbientDescriptor",
    "HypersurfaceFrame",
    "frame_at",
    # Residual systems
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
