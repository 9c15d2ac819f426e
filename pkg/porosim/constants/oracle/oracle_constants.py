"""
Reference solution kinds and limits of the brute force oracles.
"""

from aenum import Enum, auto


############# ENUMS #############
class ExactSolutionKind(Enum):
    """
    Closed-form solutions of the normalized obstacle problem with f = 1.
    """

    _init_ = "value __doc__"

    HALF_SPACE = auto(), "1/2 ((x . e)_+)^2"
    POLYNOMIAL = auto(), "m t + x^T M x with 2 Tr M - m = 1"
    RADIAL_STATIONARY = auto(), "Stationary radial solution around a disc of contact"


############# CONSTANTS #############
MAX_ENUMERATION_SIZE: int = 20
"""Largest LCP solved by active set enumeration."""

ENUMERATION_TOLERANCE: float = 1e-12
"""Relative feasibility slack of an enumerated candidate."""
