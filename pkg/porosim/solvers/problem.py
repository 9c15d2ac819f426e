"""
Problem description shared by the obstacle and damped wave solvers.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-10
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass, field
import math

import numpy as np

# Local Libraries
from porosim.constants.solvers import BoundaryKind
from porosim.errors import ConfigError, GridError
from porosim.forcing.density import ForcingSpec
from porosim.geometry.field import ScalarField
from porosim.geometry.grid import Grid, TimeGrid


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Membrane constants.

    Attributes:
        rho (float):
            Density, kg/m in 1D and kg/m^2 in 2D.
        T0 (float):
            Tension, N in 1D and N/m in 2D.
        T1 (float):
            Relaxation time in s. math.inf switches damping off.
        c_s (float):
            Speed of sound sqrt(T0 / rho), derived.
    """

    rho: float
    T0: float
    T1: float
    c_s: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("rho", "T0", "T1"):
            value = getattr(self, name)
            if math.isnan(value) or not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}.")
        if math.isinf(self.rho) or math.isinf(self.T0):
            raise ConfigError("rho and T0 must be finite.")
        object.__setattr__(self, "c_s", math.sqrt(self.T0 / self.rho))

    @classmethod
    def from_speed(cls, rho: float, c_s: float, T1: float) -> PhysicalConstants:
        return cls(rho=rho, T0=rho * c_s**2, T1=T1)

    @property
    def damping(self) -> float:
        """Coefficient 2 / T1 of the first time derivative."""
        return 2.0 / self.T1


@dataclass(frozen=True)
class NormalizationRecord:
    """
    Units of the normalized problem, u_t - Delta u = f / f_scale.

    time_scale = T1 / 2, space_scale = c_s T1 / 2 and f_scale = 4 rho U / T1^2
    for a displacement unit U.
    """

    space_scale: float
    time_scale: float
    u_scale: float
    f_scale: float

    @classmethod
    def identity(cls) -> NormalizationRecord:
        return cls(1.0, 1.0, 1.0, 1.0)

    @classmethod
    def from_constants(
        cls, constants: PhysicalConstants, u_scale: float = 1.0
    ) -> NormalizationRecord:
        if math.isinf(constants.T1):
            raise ConfigError(
                "An undamped membrane (T1 = inf) has no quasi-static normalization."
            )
        return cls(
            space_scale=constants.c_s * constants.T1 / 2.0,
            time_scale=constants.T1 / 2.0,
            u_scale=u_scale,
            f_scale=4.0 * constants.rho * u_scale / constants.T1**2,
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "space_scale": self.space_scale,
            "time_scale": self.time_scale,
            "u_scale": self.u_scale,
            "f_scale": self.f_scale,
        }


@dataclass(frozen=True, eq=False)
class BoundarySpec:
    """Clamped boundary, or a trace whose boundary nodes are imposed."""

    kind: BoundaryKind = BoundaryKind.CLAMPED_ZERO
    trace: ScalarField | None = None

    def __post_init__(self) -> None:
        if (self.kind == BoundaryKind.PRESCRIBED_TRACE) != (self.trace is not None):
            raise ConfigError(
                "A prescribed trace boundary needs a trace field, a clamped one none."
            )

    def values(self, grid: Grid, time_index: int) -> np.ndarray:
        """
        Slice carrying the boundary data on its boundary nodes.

        Interior entries are zero.
        """
        values = np.zeros(grid.shape)
        if self.trace is not None:
            mask = grid.boundary_mask()
            values[mask] = self.trace.slice(time_index)[mask]
        return values


@dataclass(frozen=True)
class StepReport:
    time_index: int
    iterations: int
    residual: float


@dataclass(frozen=True, eq=False)
class ObstacleProblemSpec:
    """
    Complete obstacle problem: grid, constants, forcing, boundary and initial
    data. `normalization` is None for a problem stated in physical units and
    holds the scales once the problem has been normalized.
    """

    grid: Grid
    time_grid: TimeGrid
    constants: PhysicalConstants
    forcing: ForcingSpec
    boundary: BoundarySpec
    initial_u: np.ndarray
    u_scale: float = 1.0
    normalization: NormalizationRecord | None = None

    def __post_init__(self) -> None:
        initial = np.array(self.initial_u, dtype=float)
        if initial.shape != self.grid.shape:
            raise GridError(
                f"initial_u has shape {initial.shape}, the grid {self.grid.shape}."
            )
        if not np.all(np.isfinite(initial)) or initial.min() < 0:
            raise ConfigError("initial_u must be finite and non-negative.")
        initial.setflags(write=False)
        object.__setattr__(self, "initial_u", initial)
        if not self.u_scale > 0:
            raise ConfigError(f"u_scale must be positive, got {self.u_scale}.")

        trace = self.boundary.trace
        if trace is not None:
            if not (
                trace.grid.same_nodes(self.grid)
                and trace.time_grid.same_times(self.time_grid)
            ):
                raise GridError("The boundary trace lives on a different grid.")
            if trace.values[:, self.grid.boundary_mask()].min() < 0:
                raise ConfigError("Boundary data must be non-negative.")

    @property
    def is_normalized(self) -> bool:
        return self.normalization is not None
