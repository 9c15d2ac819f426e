"""
Independent trapezoid quadrature over space-time cylinders.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-08-18
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass
import math
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import trapezoid

Sampler = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CylinderRegion:
    """{|x - center| < radius} x (t_start, t_end); t_start == t_end is a ball."""

    center: tuple[float, ...]
    radius: float
    t_start: float = 0.0
    t_end: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", tuple(float(c) for c in np.atleast_1d(self.center)))
        if len(self.center) not in (1, 2):
            raise ValueError("Regions are one or two dimensional.")
        if not self.radius > 0 or self.t_end < self.t_start:
            raise ValueError("Region needs a positive radius and t_end >= t_start.")

    @property
    def dim(self) -> int:
        return len(self.center)


def reference_quadrature(
    sampler: Sampler, region: CylinderRegion, resolution: int = 400
) -> float:
    """
    Composite trapezoid rule over a cylinder, in polar coordinates in 2D.

    Args:
        sampler (Sampler):
            Vectorised integrand, called as sampler(x, t) with x of shape
            (..., dim) and t broadcastable against x[..., 0].
        region (CylinderRegion):
            Integration region.
        resolution (int):
            Intervals per coordinate.

    Returns:
        float:
            The integral; a spatial integral at t_start when the time interval
            is degenerate.
    """
    if resolution < 1:
        raise ValueError("resolution must be positive.")
    center = np.asarray(region.center)
    if region.dim == 1:
        coordinate = np.linspace(-region.radius, region.radius, resolution + 1)
        offsets = coordinate[:, np.newaxis]
        jacobian = np.ones(coordinate.size)
        space_axes = (coordinate,)
    else:
        radius = np.linspace(0.0, region.radius, resolution + 1)
        theta = np.linspace(0.0, 2.0 * math.pi, resolution + 1)
        r_grid, theta_grid = np.meshgrid(radius, theta, indexing="ij")
        offsets = np.stack([r_grid * np.cos(theta_grid), r_grid * np.sin(theta_grid)], axis=-1)
        jacobian = r_grid
        space_axes = (radius, theta)

    def spatial(t: float | np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        t_shape = t.shape + (1,) * region.dim
        values = sampler(center + offsets, t.reshape(t_shape)) * jacobian
        for axis_values in reversed(space_axes):
            values = trapezoid(values, x=axis_values, axis=-1)
        return values

    if region.t_end == region.t_start:
        return float(spatial(region.t_start))
    times = np.linspace(region.t_start, region.t_end, resolution + 1)
    return float(trapezoid(spatial(times), x=times))


def trapezoid_order(
    sampler: Sampler, region: CylinderRegion, resolutions: Sequence[int], exact: float
) -> float:
    """Observed convergence order of `reference_quadrature` between two resolutions."""
    coarse, fine = resolutions
    error_coarse = abs(reference_quadrature(sampler, region, coarse) - exact)
    error_fine = abs(reference_quadrature(sampler, region, fine) - exact)
    return math.log(error_coarse / error_fine) / math.log(fine / coarse)
