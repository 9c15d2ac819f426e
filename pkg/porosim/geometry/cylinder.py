"""
Parabolic cylinders Q_rho(z0) = {|x - x0| < rho} x (t0 - rho^2, t0) and the
samples of a field that fall inside them.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-08-11
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

# Local Libraries
from porosim.constants.geometry.geometry_constants import NODE_TOLERANCE_DICT
from porosim.errors import CylinderError
from porosim.geometry.field import ScalarField


@dataclass(frozen=True)
class ParabolicCylinder:
    center_x: tuple[float, ...]
    center_t: float
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "center_x", tuple(float(c) for c in np.atleast_1d(self.center_x))
        )
        object.__setattr__(self, "center_t", float(self.center_t))
        if not self.radius > 0:
            raise CylinderError(f"Cylinder radius must be positive, got {self.radius}.")
        object.__setattr__(self, "radius", float(self.radius))

    @classmethod
    def at(cls, point: Sequence[float], radius: float) -> ParabolicCylinder:
        """Cylinder centred at a space-time point (x[, y], t)."""
        return cls(tuple(point[:-1]), point[-1], radius)

    @property
    def t_start(self) -> float:
        return self.center_t - self.radius**2


def _tolerances(field: ScalarField) -> tuple[float, float]:
    return (
        NODE_TOLERANCE_DICT["space"] * min(field.grid.h),
        NODE_TOLERANCE_DICT["time"] * field.time_grid.dt,
    )


def _check_containment(field: ScalarField, cyl: ParabolicCylinder) -> None:
    grid = field.grid
    if len(cyl.center_x) != grid.dim:
        raise CylinderError(
            f"Cylinder centre {cyl.center_x} does not match the {grid.dim}D grid."
        )
    space_tol, time_tol = _tolerances(field)
    for axis, (c, lo, hi) in enumerate(zip(cyl.center_x, grid.origin, grid.upper)):
        if c - cyl.radius < lo - space_tol or c + cyl.radius > hi + space_tol:
            raise CylinderError(
                f"Cylinder of radius {cyl.radius:g} around x={cyl.center_x} leaves "
                f"the domain along axis {axis} ([{lo:g}, {hi:g}])."
            )
    if (
        cyl.t_start < field.time_grid.t0 - time_tol
        or cyl.center_t > field.time_grid.t_end + time_tol
    ):
        raise CylinderError(
            f"Time window ({cyl.t_start:g}, {cyl.center_t:g}) leaves "
            f"[{field.time_grid.t0:g}, {field.time_grid.t_end:g}]."
        )


def _window_time_indices(field: ScalarField, cyl: ParabolicCylinder) -> np.ndarray:
    _, time_tol = _tolerances(field)
    times = field.times
    inside = (times > cyl.t_start + time_tol) & (times < cyl.center_t - time_tol)
    indices = np.flatnonzero(inside)
    if indices.size == 0:
        raise CylinderError(
            f"No time sample in ({cyl.t_start:g}, {cyl.center_t:g}); "
            f"rho^2 = {cyl.radius**2:g} against dt = {field.time_grid.dt:g}."
        )
    return indices


def _ball_mask(positions: np.ndarray, cyl: ParabolicCylinder, space_tol: float) -> np.ndarray:
    distance = np.linalg.norm(positions - np.asarray(cyl.center_x), axis=-1)
    return distance < cyl.radius - space_tol


def cylinder_nodes(field: ScalarField, cyl: ParabolicCylinder) -> tuple[np.ndarray, ...]:
    """
    Samples of a field inside an open parabolic cylinder.

    Args:
        field (ScalarField):
            Field whose grid is searched.
        cyl (ParabolicCylinder):
            The cylinder. Its closure must lie in the sampled space-time box.

    Returns:
        tuple[np.ndarray, ...]:
            Index arrays (time, axis 0[, axis 1]) usable as
            `field.values[indices]`.

    Raises:
        CylinderError:
            If the cylinder leaves the domain or contains no sample.
    """
    _check_containment(field, cyl)
    space_tol, _ = _tolerances(field)
    time_indices = _window_time_indices(field, cyl)
    space_indices = np.nonzero(_ball_mask(field.grid.positions(), cyl, space_tol))
    if space_indices[0].size == 0:
        raise CylinderError(
            f"No grid node within {cyl.radius:g} of {cyl.center_x}; "
            f"h = {field.grid.h}."
        )
    n_space = space_indices[0].size
    return (
        np.repeat(time_indices, n_space),
        *(np.tile(index, time_indices.size) for index in space_indices),
    )


def sup_on_cylinder(u: ScalarField, cyl: ParabolicCylinder, refine: int = 1) -> float:
    """
    Supremum of u over the sampled cylinder.

    With refine > 1 the spatial ball is sampled on a lattice h / refine aligned
    with the grid nodes and u is interpolated linearly in space; every grid node
    of the ball is part of that lattice.

    Args:
        u (ScalarField):
            Field.
        cyl (ParabolicCylinder):
            Cylinder.
        refine (int):
            Sub-cell refinement factor, 1 samples the nodes only.

    Returns:
        float:
            Largest sampled value.
    """
    indices = cylinder_nodes(u, cyl)
    node_sup = float(np.max(u.values[indices]))
    if refine <= 1:
        return node_sup

    grid = u.grid
    space_tol, _ = _tolerances(u)
    time_indices = np.unique(indices[0])

    block = []
    sub_axes = []
    for axis in range(grid.dim):
        lo = int(np.floor((cyl.center_x[axis] - cyl.radius - grid.origin[axis]) / grid.h[axis]))
        hi = int(np.ceil((cyl.center_x[axis] + cyl.radius - grid.origin[axis]) / grid.h[axis]))
        lo, hi = max(lo, 0), min(hi, grid.n_cells[axis])
        block.append(slice(lo, hi + 1))
        steps = np.arange((hi - lo) * refine + 1) / refine
        sub_axes.append(
            (grid.axes()[axis][lo : hi + 1], grid.origin[axis] + grid.h[axis] * (lo + steps))
        )

    node_axes = [node_axis for node_axis, _ in sub_axes]
    fine = np.stack(
        np.meshgrid(*(fine_axis for _, fine_axis in sub_axes), indexing="ij"), axis=-1
    )
    points = fine[_ball_mask(fine, cyl, space_tol)]
    if points.shape[0] == 0 or any(axis.size < 2 for axis in node_axes):
        return node_sup

    window = u.values[(time_indices, *block)]
    interpolant = RegularGridInterpolator(
        node_axes,
        np.moveaxis(window, 0, -1),
        method="linear",
        bounds_error=False,
        fill_value=None,
    )
    return max(node_sup, float(np.max(interpolant(points))))
