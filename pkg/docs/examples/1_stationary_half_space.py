"""
Solving the stationary half-space scenario.
===========================================

This example loads the bundled `stationary-1d` scenario, solves it with the
parabolic obstacle solver and compares the last slice with the closed-form
profile 1/2 (x_+)^2.
"""

import matplotlib.pyplot as plt
import numpy as np

from porosim.cli import load_config, to_problem_spec
from porosim.oracle import exact_half_space
from porosim.solvers import solve_parabolic

# Load the scenario and refine the grid
config = load_config("stationary-1d", {"grid.n_cells": [100]})
u = solve_parabolic(to_problem_spec(config))

# Compare the last slice with the exact profile
x = u.grid.axes()[0]
exact = exact_half_space([1.0]).u(u.grid.positions())
error = np.max(np.abs(u.values[-1] - exact))
print(f"max error {error:.3e}, h^2 = {u.grid.h[0] ** 2:.3e}")

figure, axis = plt.subplots()
axis.plot(x, u.values[-1], label="computed")
axis.plot(x, exact, "--", label="1/2 (x_+)^2")
axis.set_xlabel("x")
axis.set_ylabel("u")
axis.legend()
plt.show()
