"""
Damped wave equation of the membrane with inertia,

    u_tt + (2 / T1) u_t - c_s^2 Delta u = f / rho,

solved without the constraint u >= 0. In normalized units the coefficients
become 1, 1 and 1.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-08-25
"""

# Python Libraries
from __future__ import annotations
from dataclasses import replace
import logging
import math
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import factorized

# Local Libraries
from porosim.constants.solvers import WaveScheme
from porosim.constants.solvers.solver_constants import BLOWUP_FACTOR
from porosim.errors import InstabilityError, PreconditionError
from porosim.geometry.field import ScalarField
from porosim.solvers.assembly import boundary_coupling, discrete_laplacian, laplacian_matrix
from porosim.solvers.core.base_solver import BaseMembraneSolver
from porosim.solvers.parabolic_obstacle import solve_parabolic
from porosim.solvers.problem import ObstacleProblemSpec, PhysicalConstants

logger: logging.Logger = logging.getLogger(__name__)


def cfl_time_step(c_s: float, h: Sequence[float]) -> float:
    """Largest stable leapfrog step, 1 / (c_s sqrt(sum 1 / h_i^2))."""
    return 1.0 / (c_s * math.sqrt(sum(1.0 / spacing**2 for spacing in h)))


class DampedWaveSolver(BaseMembraneSolver):
    """
    Second order in time solver of the damped wave equation.

    The first step starts from rest, u^1 = u^0 + dt^2 / 2 (c^2 Delta u^0 + f^0 / rho).
    The damping term is discretised centrally, (u^{n+1} - u^{n-1}) / (T1 dt).
    """

    def __init__(
        self, spec: ObstacleProblemSpec, scheme: WaveScheme = WaveScheme.IMPLICIT
    ) -> None:
        super().__init__(spec)
        self._scheme: WaveScheme = scheme
        self._c2: float = 1.0
        self._damping: float = 1.0
        self._inv_rho: float = 1.0
        self._cfl_bound: float = math.inf
        self._scale: float = 1.0
        self._solve = None

    @property
    def cfl_bound(self) -> float:
        return self._cfl_bound

    def _start(self, problem: ObstacleProblemSpec, forcing: ScalarField) -> None:
        if problem.is_normalized:
            self._c2, self._damping, self._inv_rho = 1.0, 1.0, 1.0
        else:
            constants = problem.constants
            self._c2 = constants.c_s**2
            self._damping = constants.damping
            self._inv_rho = 1.0 / constants.rho

        grid, time_grid = problem.grid, problem.time_grid
        dt = time_grid.dt
        self._cfl_bound = cfl_time_step(math.sqrt(self._c2), grid.h)
        if self._scheme == WaveScheme.EXPLICIT and dt > self._cfl_bound:
            logger.warning(
                "dt = %.3e exceeds the CFL bound %.3e of the explicit scheme",
                dt,
                self._cfl_bound,
            )

        duration = time_grid.n_steps * dt
        trace_scale = (
            float(np.max(np.abs(problem.boundary.trace.values)))
            if problem.boundary.trace is not None
            else 0.0
        )
        self._scale = max(
            1.0,
            float(np.max(np.abs(problem.initial_u))),
            trace_scale,
            float(np.max(np.abs(forcing.values))) * self._inv_rho * duration**2,
        )

        if self._scheme == WaveScheme.IMPLICIT:
            size = int(np.prod(grid.interior_shape))
            matrix = (
                sp.identity(size) * (1.0 / dt**2 + self._damping / (2.0 * dt))
                - self._c2 * laplacian_matrix(grid)
            )
            self._solve = factorized(sp.csc_matrix(matrix))

    def _advance(self, history: np.ndarray, time_index: int) -> np.ndarray:
        problem = self._problem
        grid = problem.grid
        dt = problem.time_grid.dt
        interior = grid.interior
        boundary = problem.boundary.values(grid, time_index)
        force = self._inv_rho * self._forcing.values
        u_now = history[time_index - 1]
        new = np.array(boundary)

        if time_index == 1:
            acceleration = self._c2 * discrete_laplacian(u_now, grid.h) + force[0][interior]
            new[interior] = u_now[interior] + 0.5 * dt**2 * acceleration
            return new

        u_before = history[time_index - 2]
        inertia = (2.0 * u_now[interior] - u_before[interior]) / dt**2
        friction = self._damping / (2.0 * dt) * u_before[interior]
        if self._scheme == WaveScheme.EXPLICIT:
            rhs = (
                force[time_index - 1][interior]
                + self._c2 * discrete_laplacian(u_now, grid.h)
                + inertia
                + friction
            )
            new[interior] = rhs / (1.0 / dt**2 + self._damping / (2.0 * dt))
        else:
            rhs = (
                force[time_index][interior].reshape(-1)
                + inertia.reshape(-1)
                + friction.reshape(-1)
                + self._c2 * boundary_coupling(grid, boundary)
            )
            new[interior] = self._solve(rhs).reshape(grid.interior_shape)
        return new

    def _check_slice(self, values: np.ndarray, time_index: int) -> None:
        limit = BLOWUP_FACTOR * self._scale
        if not np.all(np.isfinite(values)) or np.max(np.abs(values)) > limit:
            raise InstabilityError(
                f"Damped wave blew up at step {time_index}; the explicit scheme is "
                f"stable for dt <= {self._cfl_bound:.6g} "
                f"(dt = {self._problem.time_grid.dt:.6g}).",
                cfl_bound=self._cfl_bound,
                time_index=time_index,
            )


def solve_damped_wave(
    spec: ObstacleProblemSpec, scheme: WaveScheme = WaveScheme.IMPLICIT
) -> ScalarField:
    """
    Trajectory of the damped wave equation with the problem's forcing and data.

    Args:
        spec (ObstacleProblemSpec):
            Problem; T1 = inf removes the damping.
        scheme (WaveScheme):
            IMPLICIT (unconditionally stable) or EXPLICIT leapfrog.

    Returns:
        ScalarField:
            Trajectory, without the constraint u >= 0.

    Raises:
        InstabilityError:
            When the trajectory blows up; the error names the CFL bound.
    """
    return DampedWaveSolver(spec, scheme).solve()


def quasi_static_sweep(
    spec: ObstacleProblemSpec,
    t1_values: Sequence[float],
    scheme: WaveScheme = WaveScheme.IMPLICIT,
) -> list[float]:
    """
    L-infinity gap between the damped wave and the unconstrained quasi-static
    solution for every relaxation time T1.

    Args:
        spec (ObstacleProblemSpec):
            Physical problem; only T1 is replaced.
        t1_values (Sequence[float]):
            Relaxation times, typically decreasing (growing damping).
        scheme (WaveScheme):
            Damped wave scheme.

    Returns:
        list[float]:
            One gap per T1.
    """
    if spec.is_normalized:
        raise PreconditionError("The quasi-static sweep compares physical trajectories.")
    gaps = []
    for t1 in t1_values:
        constants = PhysicalConstants(spec.constants.rho, spec.constants.T0, t1)
        member = replace(spec, constants=constants)
        wave = solve_damped_wave(member, scheme)
        quasi_static = solve_parabolic(member, constrained=False)
        gap = float(np.max(np.abs(wave.values - quasi_static.values)))
        logger.info("T1 = %g: L-infinity gap %.4e", t1, gap)
        gaps.append(gap)
    return gaps
