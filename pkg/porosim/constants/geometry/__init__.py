from porosim.constants.geometry.geometry_constants import UnitSystem
