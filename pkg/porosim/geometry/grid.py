"""
Uniform Cartesian space grids and time grids.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-03
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

# Local Libraries
from porosim.constants.geometry import UnitSystem
from porosim.constants.geometry.geometry_constants import (
    MIN_CELLS_PER_AXIS,
    SUPPORTED_DIMENSIONS,
)
from porosim.errors import GridError


def _as_axis_tuple(value: float | Sequence[float], dim: int, name: str) -> tuple:
    if np.ndim(value) == 0:
        values = (value,) * dim
    else:
        values = tuple(value)
    if len(values) != dim:
        raise GridError(f"{name} has {len(values)} entries, expected {dim}.")
    return values


@dataclass(frozen=True)
class Grid:
    """
    Uniform node grid over a box in one or two space dimensions.

    Nodes sit at origin + i * h for i = 0..n_cells along every axis, so each
    axis carries n_cells + 1 nodes and the first and last ones are boundary
    nodes.
    """

    dim: int
    origin: tuple[float, ...]
    extent: tuple[float, ...]
    n_cells: tuple[int, ...]
    unit_system: UnitSystem = UnitSystem.PHYSICAL
    h: tuple[float, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.dim not in SUPPORTED_DIMENSIONS:
            raise GridError(f"Only 1D and 2D grids are supported, got dim={self.dim}.")
        for name in ("origin", "extent", "n_cells"):
            object.__setattr__(
                self, name, _as_axis_tuple(getattr(self, name), self.dim, name)
            )
        object.__setattr__(self, "origin", tuple(float(o) for o in self.origin))
        object.__setattr__(self, "extent", tuple(float(e) for e in self.extent))
        if any(int(n) != n for n in self.n_cells):
            raise GridError(f"n_cells must be integers, got {self.n_cells}.")
        object.__setattr__(self, "n_cells", tuple(int(n) for n in self.n_cells))

        if any(not np.isfinite(e) or e <= 0 for e in self.extent):
            raise GridError(f"extent must be positive, got {self.extent}.")
        if any(not np.isfinite(o) for o in self.origin):
            raise GridError(f"origin must be finite, got {self.origin}.")
        if any(n < MIN_CELLS_PER_AXIS for n in self.n_cells):
            raise GridError(
                f"At least {MIN_CELLS_PER_AXIS} cells per axis needed, got {self.n_cells}."
            )
        object.__setattr__(
            self, "h", tuple(e / n for e, n in zip(self.extent, self.n_cells))
        )

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(n + 1 for n in self.n_cells)

    @property
    def node_count(self) -> int:
        return int(np.prod(self.shape))

    @property
    def interior_shape(self) -> tuple[int, ...]:
        return tuple(n - 1 for n in self.n_cells)

    @property
    def interior(self) -> tuple[slice, ...]:
        """Index expression selecting the interior nodes of a slice."""
        return tuple(slice(1, -1) for _ in range(self.dim))

    @property
    def upper(self) -> tuple[float, ...]:
        return tuple(o + e for o, e in zip(self.origin, self.extent))

    def axes(self) -> list[np.ndarray]:
        """
        Node coordinates along every axis.

        Returns:
            list[np.ndarray]:
                One array of n_cells + 1 coordinates per axis.
        """
        return [
            o + h * np.arange(n + 1) for o, h, n in zip(self.origin, self.h, self.n_cells)
        ]

    def coordinates(self) -> tuple[np.ndarray, ...]:
        """Coordinate arrays of shape `shape`, one per axis (ij indexing)."""
        return tuple(np.meshgrid(*self.axes(), indexing="ij"))

    def positions(self) -> np.ndarray:
        """Node coordinates stacked along a trailing axis, shape (*shape, dim)."""
        return np.stack(self.coordinates(), axis=-1)

    def boundary_mask(self) -> np.ndarray:
        mask = np.ones(self.shape, dtype=bool)
        mask[self.interior] = False
        return mask

    def index_to_coord(self, index: Sequence[int]) -> tuple[float, ...]:
        index = _as_axis_tuple(index, self.dim, "index")
        return tuple(o + h * i for o, h, i in zip(self.origin, self.h, index))

    def coord_to_index(self, coord: Sequence[float]) -> tuple[int, ...]:
        """
        Index of the node nearest to a coordinate.

        Raises:
            GridError:
                If the coordinate lies outside the grid by more than half a cell.
        """
        coord = _as_axis_tuple(coord, self.dim, "coord")
        index = tuple(
            int(np.rint((c - o) / h)) for c, o, h in zip(coord, self.origin, self.h)
        )
        if any(i < 0 or i > n for i, n in zip(index, self.n_cells)):
            raise GridError(f"Coordinate {coord} lies outside the grid.")
        return index

    def contains(self, coord: Sequence[float], tolerance: float = 0.0) -> bool:
        coord = _as_axis_tuple(coord, self.dim, "coord")
        return all(
            o - tolerance <= c <= u + tolerance
            for c, o, u in zip(coord, self.origin, self.upper)
        )

    def scaled(self, space_scale: float, unit_system: UnitSystem) -> Grid:
        """
        The same node set expressed in units of `space_scale`.

        Args:
            space_scale (float):
                Length that becomes the new unit.
            unit_system (UnitSystem):
                Unit system of the returned grid.

        Returns:
            Grid:
                Grid with origin and extent divided by space_scale.
        """
        return Grid(
            dim=self.dim,
            origin=tuple(o / space_scale for o in self.origin),
            extent=tuple(e / space_scale for e in self.extent),
            n_cells=self.n_cells,
            unit_system=unit_system,
        )

    def same_nodes(self, other: Grid, rtol: float = 1e-12) -> bool:
        if self.dim != other.dim or self.n_cells != other.n_cells:
            return False
        scale = max(max(abs(v) for v in self.extent), 1.0)
        return bool(
            np.allclose(self.origin, other.origin, rtol=0.0, atol=rtol * scale)
            and np.allclose(self.extent, other.extent, rtol=rtol, atol=0.0)
        )


@dataclass(frozen=True)
class TimeGrid:
    """Times t0 + j * dt for j = 0..n_steps."""

    t0: float
    dt: float
    n_steps: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise GridError(f"dt must be positive, got {self.dt}.")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise GridError(f"n_steps must be an integer >= 1, got {self.n_steps}.")
        if not np.isfinite(self.t0):
            raise GridError(f"t0 must be finite, got {self.t0}.")
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "n_steps", int(self.n_steps))

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_steps + 1)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * self.n_steps

    def index_of(self, t: float) -> int:
        index = int(np.rint((t - self.t0) / self.dt))
        if index < 0 or index > self.n_steps:
            raise GridError(f"Time {t} lies outside [{self.t0}, {self.t_end}].")
        return index

    def scaled(self, time_scale: float) -> TimeGrid:
        return replace(self, t0=self.t0 / time_scale, dt=self.dt / time_scale)

    def same_times(self, other: TimeGrid, rtol: float = 1e-12) -> bool:
        scale = max(abs(self.t_end), self.dt)
        return (
            self.n_steps == other.n_steps
            and abs(self.t0 - other.t0) <= rtol * scale
            and abs(self.dt - other.dt) <= rtol * self.dt
        )


def make_grid(
    dim: int,
    origin: float | Sequence[float],
    extent: float | Sequence[float],
    n_cells: int | Sequence[int],
    unit_system: UnitSystem = UnitSystem.PHYSICAL,
) -> Grid:
    """
    Builds a uniform grid with spacing h = extent / n_cells per axis.

    Args:
        dim (int):
            Space dimension, 1 or 2.
        origin (float | Sequence[float]):
            Lower corner of the box. A scalar is used for every axis.
        extent (float | Sequence[float]):
            Edge lengths of the box.
        n_cells (int | Sequence[int]):
            Number of cells per axis, at least 2.
        unit_system (UnitSystem):
            Unit system the coordinates are expressed in.

    Returns:
        Grid:
            The grid.

    Raises:
        GridError:
            For dim outside {1, 2}, non-positive extents or fewer than 2 cells.
    """
    return Grid(
        dim=dim,
        origin=origin,
        extent=extent,
        n_cells=n_cells,
        unit_system=unit_system,
    )


def make_time_grid(t0: float, dt: float, n_steps: int) -> TimeGrid:
    return TimeGrid(t0=t0, dt=dt, n_steps=n_steps)
