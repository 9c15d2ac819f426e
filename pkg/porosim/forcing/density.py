"""
External force density f(x, t) acting along the membrane normal.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-21
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass, field
import logging

import numpy as np

# Local Libraries
from porosim.constants.forcing import ForcingMode
from porosim.constants.forcing.forcing_constants import (
    DEFAULT_NORMAL_DIRECTION,
    DEFAULT_REFERENCE_AREA,
)
from porosim.forcing.wave import WaveForcingParams, lorentz_force
from porosim.geometry.field import ScalarField
from porosim.geometry.grid import Grid, TimeGrid

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ForcingSpec:
    """
    Source of the force density.

    Exactly one of `wave` (ANALYTIC_WAVE), `table` (TABULATED) or `value`
    (UNIFORM) is set. After `switch_off_time` the density is zero.
    """

    mode: ForcingMode
    wave: WaveForcingParams | None = None
    table: ScalarField | None = None
    value: float | None = None
    normal_dir: np.ndarray = field(
        default_factory=lambda: np.asarray(DEFAULT_NORMAL_DIRECTION)
    )
    reference_area: float = DEFAULT_REFERENCE_AREA
    switch_off_time: float | None = None

    def __post_init__(self) -> None:
        present = {
            ForcingMode.ANALYTIC_WAVE: self.wave is not None,
            ForcingMode.TABULATED: self.table is not None,
            ForcingMode.UNIFORM: self.value is not None,
        }
        if not present[self.mode] or sum(present.values()) != 1:
            raise ValueError(
                f"Forcing mode {self.mode.name} needs exactly its own data block."
            )
        normal = np.asarray(self.normal_dir, dtype=float).reshape(-1)
        normal = np.pad(normal, (0, 3 - normal.size))
        norm = np.linalg.norm(normal)
        if not norm > 0:
            raise ValueError("normal_dir must be non-zero.")
        normal = normal / norm
        normal.setflags(write=False)
        object.__setattr__(self, "normal_dir", normal)
        if not self.reference_area > 0:
            raise ValueError(
                f"reference_area must be positive, got {self.reference_area}."
            )

    @classmethod
    def uniform(cls, value: float, **kwargs) -> ForcingSpec:
        return cls(ForcingMode.UNIFORM, value=float(value), **kwargs)

    @classmethod
    def tabulated(cls, table: ScalarField, **kwargs) -> ForcingSpec:
        return cls(ForcingMode.TABULATED, table=table, **kwargs)

    @classmethod
    def analytic(cls, wave: WaveForcingParams, **kwargs) -> ForcingSpec:
        return cls(ForcingMode.ANALYTIC_WAVE, wave=wave, **kwargs)


def forcing_density(spec: ForcingSpec, grid: Grid, time_grid: TimeGrid) -> ScalarField:
    """
    Samples the force density on a space-time grid.

    For a wave the density is the Lorentz force projected on the membrane normal
    divided by the reference area. Tabulated data is resampled onto the grid.

    Args:
        spec (ForcingSpec):
            Forcing description.
        grid (Grid):
            Space grid.
        time_grid (TimeGrid):
            Time grid.

    Returns:
        ScalarField:
            f on the grid, named "f".

    Raises:
        ResamplingError:
            If tabulated data does not cover the grid.
    """
    shape = (time_grid.n_steps + 1, *grid.shape)
    match spec.mode:
        case ForcingMode.UNIFORM:
            values = np.full(shape, spec.value)
        case ForcingMode.TABULATED:
            values = np.array(spec.table.resample(grid, time_grid).values)
        case ForcingMode.ANALYTIC_WAVE:
            positions = grid.positions()[np.newaxis]
            times = time_grid.times.reshape((-1,) + (1,) * grid.dim)
            force = lorentz_force(spec.wave, positions, times)
            values = np.broadcast_to(force @ spec.normal_dir / spec.reference_area, shape)
            values = np.array(values)

    if spec.switch_off_time is not None:
        values[time_grid.times >= spec.switch_off_time] = 0.0
    logger.debug(
        "Force density (%s): min %.3e, max %.3e", spec.mode.name, values.min(), values.max()
    )
    return ScalarField(grid, time_grid, values, "f")


def to_statement_convention(f: ScalarField) -> ScalarField:
    """
    The datum of the normalized statement Delta u - u_t = f chi_{u > 0}.

    The solver works with the physical orientation u_t - Delta u = f, so the
    statement datum is the negated physical source.
    """
    return f.with_values(-f.values, name="f_statement")
