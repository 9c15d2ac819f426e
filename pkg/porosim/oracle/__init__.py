from porosim.oracle.exact import (
    ExactSolution,
    exact_half_space,
    exact_polynomial,
    exact_radial_stationary,
)
from porosim.oracle.lcp_enumeration import (
    brute_force_lcp,
    random_lcp_system,
    reference_heat_system,
)
from porosim.oracle.quadrature import CylinderRegion, reference_quadrature
