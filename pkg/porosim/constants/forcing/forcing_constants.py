"""
Forcing modes, membrane regions and the order-of-magnitude defaults of the
charge scale estimate.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-21
"""

from aenum import Enum, auto


############# ENUMS #############
class ForcingMode(Enum):
    """
    How the external force density f(x, t) is produced.
    """

    _init_ = "value __doc__"

    ANALYTIC_WAVE = auto(), "Normal projection of the Lorentz force of a travelling field wave"
    TABULATED = auto(), "Sampled field read from a field CSV"
    UNIFORM = auto(), "Constant value in space and time"


class MembraneRegion(Enum):
    """
    Regions around a docked vesicle that carry a capacitive reactance label.
    """

    _init_ = "value __doc__"

    D0 = auto(), "Outside the neighbourhood of the vesicle"
    D1 = auto(), "Plasma membrane"
    D2 = auto(), "Cytosol between plasma membrane and vesicle"
    D3 = auto(), "Vesicle membrane"
    D4 = auto(), "Vesicle lumen"


############# CONSTANTS #############
GRAVITY: float = 9.8
"""Gravitational acceleration in m/s^2 used for the weight comparison."""

DEFAULT_REFERENCE_AREA: float = 1e-16
"""Area in m^2 converting the normal Lorentz force into a force density (100 nm^2)."""

DEFAULT_NORMAL_DIRECTION: tuple[float, float, float] = (0.0, 0.0, 1.0)
"""Direction of the membrane displacement in the embedding space."""

CHARGE_SCALE_DEFAULTS_DICT: dict[str, float] = {
    "charges_per_area": 1e7,
    "dimple_area": 100.0,
    "energy_per_molecule": 1e-19,
    "characteristic_length": 1e-8,
    "dimple_mass": 1e-21,
    "g": GRAVITY,
}
"""
Defaults of the charge scale estimate. Charges are counted per nm^2, the dimple
area is in nm^2, energies in J, lengths in m and masses in kg.
"""

REACTANCE_FREE_REGIONS: tuple[MembraneRegion, ...] = (
    MembraneRegion.D0,
    MembraneRegion.D2,
)
"""Regions whose reactance is modelled as the zero constant."""

ADMISSIBILITY_DEFAULTS_DICT: dict[str, int] = {
    "max_pairs": 10_000,
    "seed": 0,
}
"""
Pair budget of the Hoelder constant estimate. Below max_pairs every sample pair
is visited, above it a seeded stratified sample of max_pairs pairs plus every
nearest-neighbour pair is used.
"""
