"""
Solver enums and the default settings of the projected relaxation.
"""

from aenum import Enum, auto


############# ENUMS #############
class BoundaryKind(Enum):
    """
    Boundary condition on the edge of the membrane patch.
    """

    _init_ = "value __doc__"

    CLAMPED_ZERO = auto(), "u = 0 on the patch boundary"
    PRESCRIBED_TRACE = auto(), "u equals a given non-negative trace on the boundary"


class ProfileKind(Enum):
    """
    Closed-form profiles used for initial data and boundary traces.
    """

    _init_ = "value __doc__"

    ZERO = auto(), "Flat membrane"
    HALF_SPACE = auto(), "1/2 ((x - x0) . e)_+^2"
    POLYNOMIAL = auto(), "m t + x^T M x"
    TWO_BUMPS = auto(), "1/2 (|x| - a)_+^2, two fronts moving towards each other"
    RADIAL_STATIONARY = auto(), "Stationary radial profile around a disc of contact"


class WaveScheme(Enum):
    """
    Time discretisation of the damped wave equation.
    """

    _init_ = "value __doc__"

    IMPLICIT = auto(), "Laplacian at the new level, unconditionally stable"
    EXPLICIT = auto(), "Leapfrog, stable under the CFL bound"


############# CONSTANTS #############
PSOR_DEFAULTS_DICT: dict[str, float | int] = {
    "omega": 1.5,
    "max_iters": 10_000,
    "tol": 1e-10,
}
"""
Relaxation factor, iteration cap and stopping tolerance of projected SOR. The
iteration stops once the largest update of a sweep falls below tol.
"""

PSOR_COLORED_MIN_SIZE: int = 64
"""Systems with fewer unknowns are swept lexicographically."""

POSITIVITY_EPS_FACTOR: float = 1e-12
"""The positive set is {u > POSITIVITY_EPS_FACTOR * max(1, max u)}."""

SMALL_DEFORMATION_WARNING: float = 0.1
"""Squared slopes at or above this value break the small deformation assumption."""

BLOWUP_FACTOR: float = 1e6
"""A damped wave trajectory exceeding this multiple of its data scale is unstable."""
