"""
Quasi-static membrane model as a parabolic obstacle problem.

Every backward Euler step solves the discrete complementarity problem

    u >= 0,  (u - u_prev) / dt - Delta_h u - s >= 0,  u . (...) = 0

at the interior nodes, where s is the normalized force density in the physical
orientation (positive s pushes the membrane towards the vesicle).

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-09-15
"""

# Python Libraries
from __future__ import annotations
from typing import Callable
import logging

import numpy as np

# Local Libraries
from porosim.errors import ConvergenceError, PreconditionError
from porosim.geometry.field import ScalarField
from porosim.geometry.grid import Grid
from porosim.solvers.assembly import HeatStepOperator
from porosim.solvers.core.base_solver import BaseMembraneSolver
from porosim.solvers.lcp import PsorSettings, psor
from porosim.solvers.normalization import denormalize_field, normalize
from porosim.solvers.problem import NormalizationRecord, ObstacleProblemSpec, StepReport

logger: logging.Logger = logging.getLogger(__name__)

OperatorFactory = Callable[[Grid, float], HeatStepOperator]


def advance_heat_step(
    operator: HeatStepOperator,
    u_prev: np.ndarray,
    source: np.ndarray,
    boundary_slice: np.ndarray,
    settings: PsorSettings | None = None,
    constrained: bool = True,
    time_index: int | None = None,
) -> tuple[np.ndarray, StepReport]:
    """
    One implicit Euler step with a prebuilt operator.

    Returns:
        tuple[np.ndarray, StepReport]:
            New slice and the relaxation statistics of the step.

    Raises:
        ConvergenceError:
            Carrying the time index when PSOR does not converge.
    """
    system = operator.system(u_prev, source, boundary_slice)
    if constrained:
        try:
            result = psor(
                system,
                settings,
                x0=np.asarray(u_prev)[operator.grid.interior],
                coloring=operator.coloring,
            )
        except ConvergenceError as error:
            raise ConvergenceError(
                f"Step {time_index}: {error}",
                residual=error.residual,
                iterations=error.iterations,
                time_index=time_index,
            ) from error
        interior, iterations, residual = result.x, result.iterations, result.residual
    else:
        interior, iterations, residual = operator.solve_linear(system), 0, 0.0

    logger.debug(
        "Step %s: %d sweeps, residual %.3e", time_index, iterations, residual
    )
    report = StepReport(
        time_index=-1 if time_index is None else time_index,
        iterations=iterations,
        residual=residual,
    )
    return operator.full_slice(interior, boundary_slice), report


def step_parabolic(
    u_prev: np.ndarray,
    f_slice: np.ndarray,
    dt: float,
    boundary: np.ndarray | None,
    grid: Grid,
    settings: PsorSettings | None = None,
) -> np.ndarray:
    """
    One constrained step of the normalized problem.

    Args:
        u_prev (np.ndarray):
            Previous slice, non-negative.
        f_slice (np.ndarray):
            Normalized force density at the new time level.
        dt (float):
            Time step.
        boundary (np.ndarray | None):
            Slice whose boundary nodes hold the boundary data; None clamps the
            boundary to zero.
        grid (Grid):
            Grid of the slices.
        settings (PsorSettings | None):
            Relaxation settings.

    Returns:
        np.ndarray:
            The new slice.
    """
    u_prev = np.asarray(u_prev, dtype=float)
    if u_prev.min() < 0:
        raise PreconditionError("u_prev must be non-negative.")
    boundary = np.zeros(grid.shape) if boundary is None else boundary
    u_next, _ = advance_heat_step(
        HeatStepOperator(grid, dt), u_prev, f_slice, boundary, settings
    )
    return u_next


class ParabolicObstacleSolver(BaseMembraneSolver):
    """
    Backward Euler / PSOR solver of the obstacle problem.

    A physical spec is normalized before marching and the trajectory is scaled
    back, so the output lives in the units of the given spec.
    """

    def __init__(
        self,
        spec: ObstacleProblemSpec,
        settings: PsorSettings | None = None,
        constrained: bool = True,
        operator_factory: OperatorFactory = HeatStepOperator,
    ) -> None:
        super().__init__(spec)
        self._settings: PsorSettings = settings or PsorSettings()
        self._constrained: bool = constrained
        self._operator_factory: OperatorFactory = operator_factory
        self._operator: HeatStepOperator | None = None
        self._record: NormalizationRecord | None = None

    @property
    def normalization(self) -> NormalizationRecord | None:
        return self._record

    def _prepare(self, spec: ObstacleProblemSpec) -> ObstacleProblemSpec:
        problem = normalize(spec)
        self._record = problem.normalization
        return problem

    def _start(self, problem: ObstacleProblemSpec, forcing: ScalarField) -> None:
        self._operator = self._operator_factory(problem.grid, problem.time_grid.dt)

    def _advance(self, history: np.ndarray, time_index: int) -> np.ndarray:
        problem = self._problem
        u_next, report = advance_heat_step(
            self._operator,
            history[time_index - 1],
            self._forcing.values[time_index],
            problem.boundary.values(problem.grid, time_index),
            self._settings,
            self._constrained,
            time_index,
        )
        self.reports.append(report)
        return u_next

    def _finish(self, trajectory: ScalarField) -> ScalarField:
        if self._constrained and self.reports:
            logger.info(
                "PSOR: at most %d sweeps per step, largest residual %.3e",
                max(report.iterations for report in self.reports),
                max(report.residual for report in self.reports),
            )
        if self._spec.is_normalized:
            return trajectory
        return denormalize_field(trajectory, self._record)


def solve_parabolic(
    spec: ObstacleProblemSpec,
    constrained: bool = True,
    settings: PsorSettings | None = None,
) -> ScalarField:
    """
    Full trajectory of the obstacle problem.

    Args:
        spec (ObstacleProblemSpec):
            Problem in physical or normalized units.
        constrained (bool):
            False drops the constraint u >= 0 and solves the plain heat step.
        settings (PsorSettings | None):
            Relaxation settings.

    Returns:
        ScalarField:
            Trajectory in the units of spec.

    Raises:
        ConvergenceError:
            With the failing time index.
    """
    return ParabolicObstacleSolver(spec, settings, constrained).solve()
