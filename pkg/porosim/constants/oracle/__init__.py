from porosim.constants.oracle.oracle_constants import ExactSolutionKind
