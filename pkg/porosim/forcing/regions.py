"""
Capacitive reactance labels of the regions around a docked vesicle.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-21
"""

# Python Libraries
from __future__ import annotations

# Local Libraries
from porosim.constants.forcing import MembraneRegion
from porosim.constants.forcing.forcing_constants import REACTANCE_FREE_REGIONS


def capacitive_reactance(omega: float, C: float) -> float:
    """
    X_C = 1 / (omega C).

    Args:
        omega (float):
            Angular frequency in rad/s, positive.
        C (float):
            Capacitance in F, positive.

    Returns:
        float:
            Reactance in ohm.
    """
    if not omega > 0 or not C > 0:
        raise ValueError(f"omega and C must be positive, got omega={omega}, C={C}.")
    return 1.0 / (omega * C)


def region_reactance(region: MembraneRegion, omega: float, C: float) -> float:
    if region in REACTANCE_FREE_REGIONS:
        return 0.0
    if region == MembraneRegion.D1:
        return capacitive_reactance(omega, C)
    raise ValueError(f"No reactance model for region {region.name} ({region.__doc__}).")
