from porosim.forcing.wave import WaveForcingParams, b_field, e_field, lorentz_force
from porosim.forcing.density import (
    ForcingSpec,
    forcing_density,
    to_statement_convention,
)
from porosim.forcing.admissibility import AdmissibilityResult, check_admissible
from porosim.forcing.scales import ChargeScaleParams, ScaleReport, scale_report
from porosim.forcing.regions import capacitive_reactance, region_reactance
