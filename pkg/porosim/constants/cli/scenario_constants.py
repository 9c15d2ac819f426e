"""
Bundled scenarios, given as partial run configurations merged over the
defaults.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-10-13
"""

_TRAVELING_WAVE: dict[str, dict] = {
    "grid": {"dim": 1, "origin": [0.5], "extent": [2.0], "n_cells": [100]},
    "time": {"t0": 0.0, "dt": 0.01, "n_steps": 300},
    "physics": {"units": "physical", "rho": 1.0, "c_s": 1.0, "T1": 2.0},
    "forcing": {"mode": "wave", "reference_area": 1.0, "normal_dir": [0.0, 0.0, 1.0]},
    "wave": {
        "B_hat": [0.0, -10.0, 0.0],
        "k_vec": [1.0, 0.0, 0.0],
        "v": 0.1,
        "q": -1.0,
        "gamma": 0.5,
    },
    "initial": {"profile": "zero"},
    "boundary": {"kind": "clamped_zero"},
}
"""
Normal force density cos(x - 0.1 t) on [0.5, 2.5]: the dimple opens where the
wave pushes and its edge follows the wave.
"""

SCENARIO_DICT: dict[str, dict[str, dict]] = {
    "stationary-1d": {
        "grid": {"dim": 1, "origin": [-1.0], "extent": [2.0], "n_cells": [200], "stagger": 0.5},
        "time": {"t0": 0.0, "dt": 0.001, "n_steps": 200},
        "forcing": {"mode": "uniform", "value": -1.0},
        "initial": {"profile": "half_space", "e": [1.0]},
        "boundary": {"kind": "prescribed_trace", "profile": "half_space", "e": [1.0]},
    },
    "traveling-wave-1d": _TRAVELING_WAVE,
    "flicker-1d": {
        **_TRAVELING_WAVE,
        "forcing": {**_TRAVELING_WAVE["forcing"], "switch_off_time": 1.5},
    },
    "two-bump-collision-1d": {
        "grid": {"dim": 1, "origin": [-1.0], "extent": [2.0], "n_cells": [100]},
        "time": {"t0": 0.0, "dt": 0.01, "n_steps": 300},
        "forcing": {"mode": "uniform", "value": -1.0},
        "initial": {"profile": "two_bumps", "a": 0.1},
        "boundary": {"kind": "prescribed_trace", "profile": "polynomial", "m": 0.0, "M": [[0.5]]},
    },
    "radial-2d": {
        "grid": {"dim": 2, "origin": [-1.0, -1.0], "extent": [2.0, 2.0], "n_cells": [200, 200]},
        "time": {"t0": 0.0, "dt": 0.002, "n_steps": 60},
        "forcing": {"mode": "uniform", "value": -1.0},
        "initial": {"profile": "radial_stationary", "r0": 0.4},
        "boundary": {"kind": "prescribed_trace", "profile": "radial_stationary", "r0": 0.4},
    },
}
"""
stationary-1d keeps the half-space solution 1/2 x_+^2 with its edge half a cell
off the nodes. two-bump-collision-1d closes the gap between two fronts and
settles on 1/2 x^2, whose zero at x = 0 is a singular point. radial-2d keeps
the stationary radial solution around the disc of radius 0.4; its horizon
t = 0.12 leaves room for Weiss scales up to sqrt(0.12) / 2 and growth radii
up to 0.16 on a grid of h = 0.01.
"""

QUASI_STATIC_T1_VALUES: tuple[float, ...] = (2.0, 1.0, 0.5, 0.25)
"""Relaxation times of the quasi-static check, decreasing inertia."""

CONVERGENCE_CELLS: tuple[int, ...] = (100, 200, 400)
"""Cells of the stationary-1d convergence study, h = 1/50, 1/100, 1/200."""
