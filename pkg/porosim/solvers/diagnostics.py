"""
Pointwise checks on solver trajectories.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-08-25
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass
import logging
import math

import numpy as np

# Local Libraries
from porosim.constants.solvers.solver_constants import (
    POSITIVITY_EPS_FACTOR,
    SMALL_DEFORMATION_WARNING,
)
from porosim.geometry.field import ScalarField
from porosim.solvers.assembly import discrete_laplacian
from porosim.solvers.problem import PhysicalConstants

logger: logging.Logger = logging.getLogger(__name__)


def positivity_eps(u: ScalarField | np.ndarray) -> float:
    """Threshold of the positive set, 1e-12 max(1, max u)."""
    values = u.values if isinstance(u, ScalarField) else np.asarray(u)
    return POSITIVITY_EPS_FACTOR * max(1.0, float(np.max(values)))


def residual(u: ScalarField, f: ScalarField) -> ScalarField:
    """
    Pointwise defect |Delta_h u - D_t u - f chi_{u > eps}| of the normalized
    statement.

    D_t is the backward difference matching the solver's time stepping. The
    defect is evaluated at interior nodes of slices 1..n_steps and set to zero
    on the boundary and in the initial slice.

    Args:
        u (ScalarField):
            Trajectory.
        f (ScalarField):
            Force density in the statement convention, on the same grid.

    Returns:
        ScalarField:
            The defect, named "residual".

    Raises:
        GridError:
            If u and f live on different grids.
    """
    u.require_same_support(f)
    grid = u.grid
    interior = (slice(1, None), *grid.interior)
    eps = positivity_eps(u)

    laplacian = discrete_laplacian(u.values[1:], grid.h)
    time_difference = (
        np.diff(u.values, axis=0)[(slice(None), *grid.interior)] / u.time_grid.dt
    )
    active = u.values[interior] > eps
    defect = np.abs(laplacian - time_difference - f.values[interior] * active)

    values = np.zeros_like(u.values)
    values[interior] = defect
    return u.with_values(values, name="residual")


@dataclass(frozen=True)
class StefanResult:
    monotone: bool
    violation: float


def check_stefan(u: ScalarField, tol: float = 1e-8) -> StefanResult:
    """
    Checks that the trajectory never moves back, u(t + dt) >= u(t) - tol.

    Returns:
        StefanResult:
            monotone flag and the most negative time difference (0 when none is
            negative).
    """
    violation = min(0.0, float(np.min(np.diff(u.values, axis=0))))
    return StefanResult(monotone=violation >= -tol, violation=violation)


def small_deformation_measure(u: ScalarField) -> float:
    """
    Largest squared slope (du/dx_i)^2 over the trajectory.

    The membrane model assumes small slopes; values of 0.1 and above are logged
    as a warning.
    """
    space_axes = tuple(range(1, u.grid.dim + 1))
    gradients = np.gradient(u.values, *u.grid.h, axis=space_axes)
    if u.grid.dim == 1:
        gradients = [gradients]
    measure = max(float(np.max(gradient**2)) for gradient in gradients)
    if measure >= SMALL_DEFORMATION_WARNING:
        logger.warning(
            "Squared slope %.3f reaches the small deformation limit %.2f",
            measure,
            SMALL_DEFORMATION_WARNING,
        )
    return measure


def inertia_ratio(u: ScalarField, constants: PhysicalConstants) -> float:
    """
    max |u_tt| / max |(2 / T1) u_t| over the trajectory.

    Small values justify dropping the inertial term of the damped wave
    equation. Needs at least three time slices.
    """
    if u.time_grid.n_steps < 2:
        raise ValueError("The inertia ratio needs at least three time slices.")
    dt = u.time_grid.dt
    values = u.values
    acceleration = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / dt**2
    velocity = (values[2:] - values[:-2]) / (2.0 * dt)
    inertia = float(np.max(np.abs(acceleration)))
    friction = constants.damping * float(np.max(np.abs(velocity)))
    if friction == 0.0:
        return 0.0 if inertia == 0.0 else math.inf
    return inertia / friction
