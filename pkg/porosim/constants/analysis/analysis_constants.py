"""
Labels and default settings of the free boundary diagnostics.
"""

from aenum import Enum, auto


############# ENUMS #############
class PointLabel(Enum):
    """
    Classification of a free boundary point.
    """

    _init_ = "value __doc__"

    REGULAR = auto(), "Weiss limit close to A_n"
    SINGULAR = auto(), "Weiss limit close to 2 A_n"
    UNRESOLVED = auto(), "Neither value is matched within the threshold"


class BlowupKind(Enum):
    """
    Family a rescaled profile was matched against.
    """

    _init_ = "value __doc__"

    HALF_SPACE = auto(), "1/2 ((x . e)_+)^2"
    POLYNOMIAL = auto(), "m t + x^T M x"
    UNRESOLVED = auto(), "Neither family fits"


############# CONSTANTS #############
CLASSIFICATION_DEFAULTS_DICT: dict[str, float | int] = {
    "threshold": 0.25,
    "n_tau": 4,
    "min_tau_cells": 8,
}
"""
Classification threshold on |ratio - 1| and |ratio - 2|, number of tau values in
the default geometric sequence tau_max * 2^-k, and the smallest tau in grid cells.
"""

EXTRAPOLATION_DEFAULTS_DICT: dict[str, float] = {
    "rtol": 1e-3,
}
"""Relative change allowed between the last two Richardson values."""

WEISS_QUADRATURE_DEFAULTS_DICT: dict[str, int] = {
    "n_sigma": 33,
    "n_radial": 65,
    "n_theta": 64,
}
"""
Simpson nodes in the scaled time sigma in [1, 4], in the radius (1D: half the
nodes over [-1, 1]) and in the polar angle. n_theta is a multiple of 8 so the
kinks of half-space profiles aligned with an axis fall on panel boundaries.
"""

BLOWUP_DEFAULTS_DICT: dict[str, float | int] = {
    "reference_n_cells": 50,
    "reference_n_steps": 25,
    "residual_threshold": 0.05,
    "n_angles": 360,
}
"""
Reference cylinder resolution ([-1, 1]^n x [-1, 0]), relative L2 residual above
which a family is rejected, and the angular search resolution in 2D.
"""

KERNEL_EIGEN_THRESHOLD: float = 1e-3
"""Eigenvalues below this fraction of the largest one count as zero."""

ISOLATION_CELLS: int = 3
"""A singular point is isolated when no other one lies within this many cells."""

FREE_BOUNDARY_MERGE_FACTOR: float = 1e-3
"""Interface points closer than this fraction of h are merged."""

SUP_REFINE: int = 8
"""Sub-cell refinement of the cylinder supremum in the regularity sweeps."""
