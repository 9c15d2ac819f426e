from porosim.solvers.core.base_solver import BaseMembraneSolver
