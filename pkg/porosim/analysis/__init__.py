from porosim.analysis.free_boundary import (
    FreeBoundarySet,
    extract_free_boundary,
    fit_circle,
    free_boundary_measure,
)
from porosim.analysis.regularity import (
    RegularityReport,
    derivative_bounds,
    nondegeneracy_sweep,
    quadratic_growth_sweep,
    regularity_report,
)
from porosim.analysis.blowup import (
    BlowupFit,
    fit_blowup,
    max_blowup_scale,
    reference_cylinder,
    rescale_blowup,
)
from porosim.analysis.weiss import (
    FieldWeissEvaluator,
    HalfSpaceWeissEvaluator,
    WeissQuadrature,
    WeissValue,
    compute_A_n,
    heat_kernel,
    richardson_extrapolate,
    weiss_energy,
    weiss_sweep,
)
from porosim.analysis.classification import (
    SingularStructureReport,
    classify_point,
    default_tau_sequence,
    label_from_ratio,
    singular_structure,
)
