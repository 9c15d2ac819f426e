from porosim.constants.solvers.solver_constants import (
    BoundaryKind,
    ProfileKind,
    WaveScheme,
)
