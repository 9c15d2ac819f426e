"""
Closed-form profiles for initial data and boundary traces.
"""

# Python Libraries
from __future__ import annotations
from typing import Sequence

import numpy as np

# Local Libraries
from porosim.constants.solvers import ProfileKind
from porosim.errors import ConfigError
from porosim.geometry.field import ScalarField
from porosim.geometry.grid import Grid, TimeGrid


def _centered(positions: np.ndarray, center: Sequence[float] | None) -> np.ndarray:
    if center is None:
        return positions
    return positions - np.asarray(center, dtype=float)


def evaluate_profile(
    kind: ProfileKind,
    positions: np.ndarray,
    t: np.ndarray | float = 0.0,
    **params,
) -> np.ndarray:
    """
    Evaluates a profile at positions (..., dim).

    Args:
        kind (ProfileKind):
            Profile family.
        positions (np.ndarray):
            Coordinates, trailing axis of length dim.
        t (np.ndarray | float):
            Times broadcastable against positions[..., 0].
        **params:
            center (x0), e (HALF_SPACE), m and M (POLYNOMIAL), a (TWO_BUMPS),
            r0 (RADIAL_STATIONARY).

    Returns:
        np.ndarray:
            Profile values.
    """
    x = _centered(np.asarray(positions, dtype=float), params.get("center"))
    dim = x.shape[-1]
    t = np.asarray(t, dtype=float)
    match kind:
        case ProfileKind.ZERO:
            values = np.zeros(x.shape[:-1])
        case ProfileKind.HALF_SPACE:
            e = np.asarray(params.get("e", np.eye(dim)[0]), dtype=float)
            values = 0.5 * np.maximum(x @ e, 0.0) ** 2
        case ProfileKind.POLYNOMIAL:
            M = np.asarray(params.get("M", 0.5 * np.eye(dim)), dtype=float).reshape(dim, dim)
            m = float(params.get("m", 0.0))
            values = m * t + np.einsum("...i,ij,...j->...", x, M, x)
        case ProfileKind.TWO_BUMPS:
            a = float(params.get("a", 0.0))
            values = 0.5 * np.maximum(np.linalg.norm(x, axis=-1) - a, 0.0) ** 2
        case ProfileKind.RADIAL_STATIONARY:
            if dim != 2:
                raise ConfigError("The radial stationary profile is two-dimensional.")
            r0 = float(params["r0"])
            r = np.linalg.norm(x, axis=-1)
            outside = r > r0
            safe_r = np.where(outside, r, r0)
            values = np.where(
                outside,
                (safe_r**2 - r0**2) / 4.0 - 0.5 * r0**2 * np.log(safe_r / r0),
                0.0,
            )
    return np.broadcast_to(values, np.broadcast_shapes(values.shape, t.shape)).copy()


def make_profile(kind: ProfileKind, grid: Grid, t: float = 0.0, **params) -> np.ndarray:
    """Profile sampled on the grid nodes at time t."""
    return evaluate_profile(kind, grid.positions(), t, **params)


def make_profile_field(
    kind: ProfileKind, grid: Grid, time_grid: TimeGrid, name: str = "u", **params
) -> ScalarField:
    return ScalarField.from_function(
        grid,
        time_grid,
        lambda positions, times: evaluate_profile(kind, positions, times, **params),
        name,
    )
