from porosim.constants.forcing.forcing_constants import ForcingMode, MembraneRegion
