"""
Commands, exit codes and the default run configuration of the command line
front end.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-10-13
"""

from aenum import Enum, auto

from porosim.constants.analysis.analysis_constants import CLASSIFICATION_DEFAULTS_DICT
from porosim.constants.forcing.forcing_constants import CHARGE_SCALE_DEFAULTS_DICT
from porosim.constants.solvers.solver_constants import PSOR_DEFAULTS_DICT


############# ENUMS #############
class Command(Enum):
    """
    Sub-commands of `porosim`.
    """

    _init_ = "value __doc__"

    SIMULATE = "simulate", "Solve a scenario and write trajectory, metadata and plots"
    ANALYZE = "analyze", "Free boundary diagnostics of a trajectory"
    VALIDATE = "validate", "Run the oracle suite and print a pass/fail table"
    SCALE_REPORT = "scale-report", "Force and energy magnitudes of the charge estimate"
    SWEEP = "sweep", "Run one scenario for several values of a parameter"


class ExitCode(Enum):
    """
    Process exit status.
    """

    _init_ = "value __doc__"

    SUCCESS = 0, "Command completed"
    FAILURE = 1, "Solver or check failure"
    CONFIG_ERROR = 2, "Invalid configuration, nothing was computed"


############# CONSTANTS #############
ENV_THREADS: str = "POROSIM_THREADS"
"""Environment variable capping the sweep workers."""

DEFAULT_OUTPUT_DIR: str = "porosim_out"

CONFIG_DEFAULTS_DICT: dict[str, dict | str | int] = {
    "scenario": "custom",
    "seed": 0,
    "grid": {
        "dim": 1,
        "origin": [-1.0],
        "extent": [2.0],
        "n_cells": [100],
        "stagger": 0.0,
    },
    "time": {
        "t0": 0.0,
        "dt": 0.01,
        "n_steps": 100,
    },
    "physics": {
        "units": "physical",
        "rho": 1.0,
        "c_s": 1.0,
        "T1": 2.0,
        "u_scale": 1.0,
    },
    "forcing": {
        "mode": "uniform",
        "value": -1.0,
        "table_path": "",
        "switch_off_time": -1.0,
        "reference_area": 1.0,
        "normal_dir": [0.0, 0.0, 1.0],
    },
    "wave": {
        "B_hat": [0.0, 0.0, 0.0],
        "k_vec": [1.0, 0.0, 0.0],
        "v": 0.0,
        "B_dc": [0.0, 0.0, 0.0],
        "E0": [0.0, 0.0, 0.0],
        "q": 0.0,
        "gamma": 0.0,
        "f_osc": 0.0,
    },
    "initial": {
        "profile": "zero",
    },
    "boundary": {
        "kind": "clamped_zero",
        "profile": "zero",
    },
    "solver": {
        "model": "obstacle",
        "scheme": "implicit",
        **PSOR_DEFAULTS_DICT,
    },
    "analysis": {
        "slices": "last",
        "stride": 1,
        "rho_list": [],
        "tau_list": [],
        "lambdas": [1.0, 0.5, 0.25],
        **CLASSIFICATION_DEFAULTS_DICT,
        "refine": 8,
    },
    "scales": dict(CHARGE_SCALE_DEFAULTS_DICT),
    "sweep": {
        "parameter": "",
        "values": [],
    },
}
"""
Defaults every configuration file is merged over. A negative
forcing.switch_off_time keeps the forcing on; an empty rho_list or tau_list
selects the automatic sequences. Profile parameters (center, e, m, M, a, r0)
are optional keys of the initial and boundary sections.
"""

CONFIG_CHOICES_DICT: dict[str, tuple[str, ...]] = {
    "physics.units": ("physical", "normalized"),
    "forcing.mode": ("uniform", "wave", "table"),
    "initial.profile": ("zero", "half_space", "polynomial", "two_bumps", "radial_stationary"),
    "boundary.kind": ("clamped_zero", "prescribed_trace"),
    "boundary.profile": ("zero", "half_space", "polynomial", "two_bumps", "radial_stationary"),
    "solver.model": ("obstacle", "unconstrained", "damped_wave"),
    "solver.scheme": ("implicit", "explicit"),
    "analysis.slices": ("last", "all"),
}
"""Allowed string values per dotted key."""

CONFIG_RANGES_DICT: dict[str, tuple[float, float]] = {
    "time.dt": (0.0, float("inf")),
    "time.n_steps": (1, 10_000_000),
    "physics.rho": (0.0, float("inf")),
    "physics.c_s": (0.0, float("inf")),
    "physics.T1": (0.0, float("inf")),
    "physics.u_scale": (0.0, float("inf")),
    "forcing.reference_area": (0.0, float("inf")),
    "solver.omega": (0.0, 2.0),
    "solver.max_iters": (1, 100_000_000),
    "solver.tol": (0.0, 1.0),
    "analysis.stride": (1, 1_000_000),
    "analysis.threshold": (0.0, 0.5),
    "analysis.n_tau": (1, 16),
    "analysis.min_tau_cells": (1, 1000),
    "analysis.refine": (1, 64),
}
"""
Open intervals (lo, hi) of the numeric settings; integer settings accept the
bounds themselves. physics.T1 may also be inf for an undamped wave.
"""

INTEGER_KEYS: tuple[str, ...] = (
    "time.n_steps",
    "solver.max_iters",
    "analysis.stride",
    "analysis.n_tau",
    "analysis.min_tau_cells",
    "analysis.refine",
)

RHO_SWEEP_DICT: dict[str, float | int] = {
    "count": 6,
    "largest": 0.16,
    "span": 4.0,
    "min_cells": 4,
    "time_margin": 0.25,
}
"""
Automatic radius sweep used when analysis.rho_list is empty: count geometric
radii from min(largest, admissible radius) down to that value divided by span.
The smallest radius is at least min_cells grid cells and sqrt(dt) (1 + time_margin),
so every cylinder holds several nodes and a time sample.
"""

METADATA_SUFFIX: str = ".meta"
"""Sidecar of every output file, key=value lines."""

ERROR_LINE_PREFIX: str = "error:"
