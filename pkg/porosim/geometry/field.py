"""
Scalar fields sampled on a space-time grid.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-07
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import RegularGridInterpolator

# Local Libraries
from porosim.errors import GridError, ResamplingError
from porosim.geometry.grid import Grid, TimeGrid


@dataclass(frozen=True, eq=False)
class ScalarField:
    """
    Full space-time trajectory of a scalar quantity.

    values has shape (n_steps + 1, *grid.shape): the leading axis is time, the
    remaining ones follow the grid axes. The array is copied and made read-only
    on construction.
    """

    grid: Grid
    time_grid: TimeGrid
    values: np.ndarray
    name: str = "u"

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float, copy=True)
        expected = (self.time_grid.n_steps + 1, *self.grid.shape)
        if values.shape != expected:
            raise GridError(
                f"Field '{self.name}' has shape {values.shape}, expected {expected}."
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(
        cls,
        grid: Grid,
        time_grid: TimeGrid,
        function: Callable[[np.ndarray, np.ndarray], np.ndarray],
        name: str = "u",
    ) -> ScalarField:
        """
        Samples `function(positions, t)` on every node and time.

        Args:
            grid (Grid):
                Space grid.
            time_grid (TimeGrid):
                Time grid.
            function (Callable[[np.ndarray, np.ndarray], np.ndarray]):
                Vectorised function. It receives positions of shape
                (1, *grid.shape, dim) and times of shape (n_steps + 1, 1, ...,
                1) and returns values broadcastable to the field shape.
            name (str):
                Field name.
        """
        positions = grid.positions()[np.newaxis]
        times = time_grid.times.reshape((-1,) + (1,) * grid.dim)
        values = np.broadcast_to(
            function(positions, times), (time_grid.n_steps + 1, *grid.shape)
        )
        return cls(grid, time_grid, values, name)

    @classmethod
    def constant(
        cls, grid: Grid, time_grid: TimeGrid, value: float, name: str = "u"
    ) -> ScalarField:
        return cls(
            grid, time_grid, np.full((time_grid.n_steps + 1, *grid.shape), value), name
        )

    @property
    def times(self) -> np.ndarray:
        return self.time_grid.times

    @property
    def sample_count(self) -> int:
        return self.values.size

    def slice(self, time_index: int) -> np.ndarray:
        return self.values[time_index]

    def with_values(self, values: np.ndarray, name: str | None = None) -> ScalarField:
        return ScalarField(self.grid, self.time_grid, values, name or self.name)

    def same_support(self, other: ScalarField) -> bool:
        return self.grid.same_nodes(other.grid) and self.time_grid.same_times(
            other.time_grid
        )

    def require_same_support(self, other: ScalarField) -> None:
        if not self.same_support(other):
            raise GridError(
                f"Fields '{self.name}' and '{other.name}' live on different grids."
            )

    def interpolator(self, values: np.ndarray | None = None) -> RegularGridInterpolator:
        """
        Piecewise multilinear interpolant over (t, x[, y]).

        Args:
            values (np.ndarray | None):
                Array of the field's shape to interpolate instead of the field
                values, e.g. a derivative.

        Returns:
            RegularGridInterpolator:
                Interpolant that extrapolates linearly; callers check the bounds.
        """
        return RegularGridInterpolator(
            (self.times, *self.grid.axes()),
            self.values if values is None else values,
            method="linear",
            bounds_error=False,
            fill_value=None,
        )

    def resample(self, grid: Grid, time_grid: TimeGrid) -> ScalarField:
        """
        Interpolates the field onto another grid.

        Raises:
            ResamplingError:
                If the target grid reaches outside the sampled region.
        """
        if grid.dim != self.grid.dim:
            raise ResamplingError(
                f"Cannot resample a {self.grid.dim}D field onto a {grid.dim}D grid."
            )
        if self.grid.same_nodes(grid) and self.time_grid.same_times(time_grid):
            return ScalarField(grid, time_grid, self.values, self.name)

        slack = 1e-9 * max(max(self.grid.h), self.time_grid.dt)
        inside_space = all(
            lo >= own_lo - slack and hi <= own_hi + slack
            for lo, hi, own_lo, own_hi in zip(
                grid.origin, grid.upper, self.grid.origin, self.grid.upper
            )
        )
        inside_time = (
            time_grid.t0 >= self.time_grid.t0 - slack
            and time_grid.t_end <= self.time_grid.t_end + slack
        )
        if not (inside_space and inside_time):
            raise ResamplingError(
                f"Resampling '{self.name}' would require extrapolation beyond "
                f"x in {self.grid.origin}..{self.grid.upper}, "
                f"t in [{self.time_grid.t0}, {self.time_grid.t_end}]."
            )

        points = np.stack(
            np.meshgrid(time_grid.times, *grid.axes(), indexing="ij"), axis=-1
        )
        return ScalarField(grid, time_grid, self.interpolator()(points), self.name)
