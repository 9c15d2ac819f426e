"""
Order-of-magnitude estimate of the force the field wave exerts on a dimple,
compared with the weight of the dimple.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-28
"""

# Python Libraries
from __future__ import annotations
from dataclasses import asdict, dataclass

# Local Libraries
from porosim.constants.forcing.forcing_constants import CHARGE_SCALE_DEFAULTS_DICT


@dataclass(frozen=True)
class ChargeScaleParams:
    """
    Inputs of the scale estimate.

    Attributes:
        charges_per_area (float):
            Surplus charges per nm^2 of membrane.
        dimple_area (float):
            Dimple top area in nm^2.
        energy_per_molecule (float):
            Energy transferred to one carrier in J.
        characteristic_length (float):
            Length over which that energy acts in m.
        dimple_mass (float):
            Mass of the dimple in kg.
        g (float):
            Gravitational acceleration in m/s^2.
    """

    charges_per_area: float = CHARGE_SCALE_DEFAULTS_DICT["charges_per_area"]
    dimple_area: float = CHARGE_SCALE_DEFAULTS_DICT["dimple_area"]
    energy_per_molecule: float = CHARGE_SCALE_DEFAULTS_DICT["energy_per_molecule"]
    characteristic_length: float = CHARGE_SCALE_DEFAULTS_DICT["characteristic_length"]
    dimple_mass: float = CHARGE_SCALE_DEFAULTS_DICT["dimple_mass"]
    g: float = CHARGE_SCALE_DEFAULTS_DICT["g"]

    def __post_init__(self) -> None:
        if self.charges_per_area < 0:
            raise ValueError("charges_per_area must be non-negative.")
        for name, value in asdict(self).items():
            if name != "charges_per_area" and not value > 0:
                raise ValueError(f"{name} must be positive, got {value}.")


@dataclass(frozen=True)
class ScaleReport:
    carriers: float
    per_molecule_force: float
    total_force: float
    gravity_force: float

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def scale_report(p: ChargeScaleParams) -> ScaleReport:
    """
    Force scales of the dimple region.

    Returns:
        ScaleReport:
            Carrier count, force per carrier (N), total force (N) and the weight
            of the dimple (N).
    """
    carriers = p.charges_per_area * p.dimple_area
    per_molecule_force = p.energy_per_molecule / p.characteristic_length
    return ScaleReport(
        carriers=carriers,
        per_molecule_force=per_molecule_force,
        total_force=carriers * per_molecule_force,
        gravity_force=p.dimple_mass * p.g,
    )
