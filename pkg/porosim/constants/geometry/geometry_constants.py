"""
Enums and default tables shared by grids, fields and parabolic cylinders.
"""

from aenum import Enum, auto


############# ENUMS #############
class UnitSystem(Enum):
    """
    Unit system a grid and the fields living on it are expressed in.
    """

    _init_ = "value __doc__"

    PHYSICAL = auto(), "SI units (m, s, N)"
    NORMALIZED = auto(), "Unit coefficients on the time derivative and the Laplacian"


############# CONSTANTS #############
SUPPORTED_DIMENSIONS: tuple[int, ...] = (1, 2)
"""Space dimensions of the membrane patch."""

MIN_CELLS_PER_AXIS: int = 2

NODE_TOLERANCE_DICT: dict[str, float] = {
    "space": 1e-9,
    "time": 1e-9,
}
"""
Relative tolerances used when deciding whether a node lies strictly inside a
parabolic cylinder. "space" is relative to the smallest grid spacing, "time" to dt.
"""

FIELD_CSV_FLOAT_FORMAT: str = "%.17g"
"""Every float written to a field CSV round-trips exactly."""

FIELD_CSV_VALUE_COLUMNS: tuple[str, ...] = ("t", "value")
FIELD_CSV_SPACE_COLUMNS_DICT: dict[int, tuple[str, ...]] = {
    1: ("x",),
    2: ("x", "y"),
}
"""Leading CSV columns per space dimension."""
