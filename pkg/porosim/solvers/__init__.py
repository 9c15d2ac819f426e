from porosim.solvers.problem import (
    BoundarySpec,
    NormalizationRecord,
    ObstacleProblemSpec,
    PhysicalConstants,
    StepReport,
)
from porosim.solvers.lcp import (
    LcpSystem,
    PsorResult,
    PsorSettings,
    complementarity_residual,
    psor,
)
from porosim.solvers.assembly import HeatStepOperator, discrete_laplacian
from porosim.solvers.normalization import (
    denormalize,
    denormalize_field,
    normalize,
    normalize_field,
)
from porosim.solvers.parabolic_obstacle import (
    ParabolicObstacleSolver,
    solve_parabolic,
    step_parabolic,
)
from porosim.solvers.damped_wave import (
    DampedWaveSolver,
    quasi_static_sweep,
    solve_damped_wave,
)
from porosim.solvers.diagnostics import (
    StefanResult,
    check_stefan,
    inertia_ratio,
    residual,
    small_deformation_measure,
)
from porosim.solvers.profiles import evaluate_profile, make_profile, make_profile_field
