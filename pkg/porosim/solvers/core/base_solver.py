"""
Base class of the time stepping membrane solvers.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-10
"""

# Python Libraries
from __future__ import annotations
from typing import TYPE_CHECKING

from abc import ABC, abstractmethod
import logging
import time

import numpy as np

# Local Libraries
from porosim.forcing.density import forcing_density
from porosim.geometry.field import ScalarField

# Type Checking
if TYPE_CHECKING:
    from porosim.solvers.problem import ObstacleProblemSpec, StepReport

logger: logging.Logger = logging.getLogger(__name__)


class BaseMembraneSolver(ABC):
    """
    Marches an ObstacleProblemSpec through its time grid.

    Subclasses prepare the problem (e.g. normalize it), set up their operators
    in `_start` and produce one new slice per call of `_advance`.
    """

    def __init__(self, spec: ObstacleProblemSpec) -> None:
        self._spec: ObstacleProblemSpec = spec
        self._problem: ObstacleProblemSpec | None = None
        self._forcing: ScalarField | None = None
        self.reports: list[StepReport] = []

    @property
    def problem(self) -> ObstacleProblemSpec | None:
        """Problem actually marched, available after `solve`."""
        return self._problem

    def _prepare(self, spec: ObstacleProblemSpec) -> ObstacleProblemSpec:
        return spec

    def _finish(self, trajectory: ScalarField) -> ScalarField:
        return trajectory

    @abstractmethod
    def _start(self, problem: ObstacleProblemSpec, forcing: ScalarField) -> None:
        """
        Builds the operators for a prepared problem.

        Args:
            problem (ObstacleProblemSpec):
                The prepared problem.
            forcing (ScalarField):
                Force density sampled on the problem's grid.
        """
        pass

    @abstractmethod
    def _advance(self, history: np.ndarray, time_index: int) -> np.ndarray:
        """
        Computes slice `time_index` from the slices before it.

        Args:
            history (np.ndarray):
                Trajectory buffer; slices 0..time_index - 1 are filled.
            time_index (int):
                Index of the slice to compute.

        Returns:
            np.ndarray:
                The new slice including its boundary nodes.
        """
        pass

    def _check_slice(self, values: np.ndarray, time_index: int) -> None:
        pass

    def solve(self) -> ScalarField:
        """
        Runs the time loop.

        Returns:
            ScalarField:
                The full trajectory in the units of the given spec.
        """
        started = time.perf_counter()
        self.reports = []
        problem = self._prepare(self._spec)
        self._problem = problem
        self._forcing = forcing_density(problem.forcing, problem.grid, problem.time_grid)
        self._start(problem, self._forcing)

        history = np.empty((problem.time_grid.n_steps + 1, *problem.grid.shape))
        history[0] = problem.initial_u
        for time_index in range(1, problem.time_grid.n_steps + 1):
            history[time_index] = self._advance(history, time_index)
            self._check_slice(history[time_index], time_index)

        trajectory = self._finish(
            ScalarField(problem.grid, problem.time_grid, history, "u")
        )
        logger.info(
            "%s: %d steps on a %s grid in %.2f s",
            type(self).__name__,
            problem.time_grid.n_steps,
            "x".join(str(n) for n in problem.grid.n_cells),
            time.perf_counter() - started,
        )
        return trajectory
