"""
Following a dimple pushed by a traveling wave.
==============================================

This example solves the `traveling-wave-1d` scenario, extracts the free
boundary of every slice and plots its position over time. The forcing is never
switched off, so the membrane only moves up.
"""

import matplotlib.pyplot as plt

from porosim.analysis import extract_free_boundary
from porosim.cli import load_config, to_problem_spec
from porosim.solvers import check_stefan, solve_parabolic

u = solve_parabolic(to_problem_spec(load_config("traveling-wave-1d")))
fb = extract_free_boundary(u)

stefan = check_stefan(u)
print(f"monotone in time: {stefan.monotone} (worst decrease {stefan.violation:.2e})")

figure, axis = plt.subplots()
for time_index, points in enumerate(fb.points):
    axis.plot(points[:, 0], [fb.times[time_index]] * len(points), "k.", markersize=2)
axis.set_xlabel("x")
axis.set_ylabel("t")
axis.set_title("Free boundary")
plt.show()
