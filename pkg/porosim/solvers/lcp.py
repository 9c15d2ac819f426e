"""
Linear complementarity systems and projected successive over-relaxation.

The system asks for x >= 0 with A x - b >= 0 and x . (A x - b) = 0.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-14
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass, field
import logging

import numpy as np
import scipy.sparse as sp

# Local Libraries
from porosim.constants.solvers.solver_constants import (
    PSOR_COLORED_MIN_SIZE,
    PSOR_DEFAULTS_DICT,
)
from porosim.errors import ConvergenceError

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LcpSystem:
    matrix: sp.csr_matrix
    rhs: np.ndarray
    lower_bound: np.ndarray = field(default=None)

    def __post_init__(self) -> None:
        matrix = sp.csr_matrix(self.matrix, dtype=float)
        rhs = np.asarray(self.rhs, dtype=float).reshape(-1)
        if matrix.shape != (rhs.size, rhs.size):
            raise ValueError(
                f"Matrix of shape {matrix.shape} does not match rhs of size {rhs.size}."
            )
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "lower_bound", np.zeros(rhs.size))

    @property
    def size(self) -> int:
        return self.rhs.size

    def permuted(self, order: np.ndarray) -> LcpSystem:
        """Same problem with the unknowns renumbered by `order`."""
        return LcpSystem(self.matrix[order][:, order], self.rhs[order])


@dataclass(frozen=True)
class PsorSettings:
    omega: float = PSOR_DEFAULTS_DICT["omega"]
    max_iters: int = PSOR_DEFAULTS_DICT["max_iters"]
    tol: float = PSOR_DEFAULTS_DICT["tol"]

    def __post_init__(self) -> None:
        if not 0 < self.omega < 2:
            raise ValueError(f"omega must lie in (0, 2), got {self.omega}.")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError(f"max_iters must be a positive integer, got {self.max_iters}.")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}.")


@dataclass(frozen=True)
class PsorResult:
    x: np.ndarray
    iterations: int
    residual: float


def complementarity_residual(system: LcpSystem, x: np.ndarray) -> float:
    """
    max |min(x, (A x - b) / diag A)|, zero exactly at a solution.
    """
    if system.size == 0:
        return 0.0
    slack = (system.matrix @ x - system.rhs) / system.matrix.diagonal()
    return float(np.max(np.abs(np.minimum(x, slack))))


class _ColoredSweep:
    """
    Vectorised red-black sweep. Unknowns of one colour must not couple with
    each other, then updating a whole colour at once equals the sequential
    sweep in that ordering.
    """

    def __init__(self, matrix: sp.csr_matrix, coloring: np.ndarray) -> None:
        self.diagonal = matrix.diagonal()
        self.colors = [np.flatnonzero(coloring == color) for color in (0, 1)]
        self.couplings = [
            matrix[own][:, other]
            for own, other in (self.colors, self.colors[::-1])
        ]

    @staticmethod
    def is_valid(matrix: sp.csr_matrix, coloring: np.ndarray) -> bool:
        if coloring.shape != (matrix.shape[0],):
            return False
        for color in (0, 1):
            own = np.flatnonzero(coloring == color)
            block = sp.csr_matrix(matrix[own][:, own])
            if (block - sp.diags(block.diagonal())).count_nonzero() > 0:
                return False
        return True

    def sweep(self, x: np.ndarray, rhs: np.ndarray, omega: float) -> float:
        change = 0.0
        for own, other, coupling in zip(
            self.colors, self.colors[::-1], self.couplings
        ):
            diag = self.diagonal[own]
            gauss_seidel = (rhs[own] - coupling @ x[other]) / diag
            updated = np.maximum(0.0, (1.0 - omega) * x[own] + omega * gauss_seidel)
            if updated.size:
                change = max(change, float(np.max(np.abs(updated - x[own]))))
            x[own] = updated
        return change


def _lexicographic_sweep(
    matrix: sp.csr_matrix,
    diagonal: np.ndarray,
    x: np.ndarray,
    rhs: np.ndarray,
    omega: float,
) -> float:
    change = 0.0
    indptr, indices, data = matrix.indptr, matrix.indices, matrix.data
    for i in range(rhs.size):
        row = slice(indptr[i], indptr[i + 1])
        residual = rhs[i] - data[row] @ x[indices[row]]
        updated = max(0.0, x[i] + omega * residual / diagonal[i])
        change = max(change, abs(updated - x[i]))
        x[i] = updated
    return change


def psor(
    system: LcpSystem,
    settings: PsorSettings | None = None,
    x0: np.ndarray | None = None,
    coloring: np.ndarray | None = None,
) -> PsorResult:
    """
    Projected SOR for an LCP with a symmetric positive definite matrix.

    Args:
        system (LcpSystem):
            The complementarity system.
        settings (PsorSettings | None):
            Relaxation factor, iteration cap and tolerance on the largest update.
        x0 (np.ndarray | None):
            Initial guess, projected onto x >= 0. Zero when omitted.
        coloring (np.ndarray | None):
            Two-colouring (0/1 per unknown) without same-colour couplings. Enables
            the vectorised sweep on systems of at least PSOR_COLORED_MIN_SIZE
            unknowns.

    Returns:
        PsorResult:
            Solution, sweeps used and complementarity residual.

    Raises:
        ConvergenceError:
            If the update does not fall below tol within max_iters sweeps.
    """
    settings = settings or PsorSettings()
    matrix = system.matrix
    rhs = system.rhs
    if x0 is None:
        x = np.zeros(system.size)
    else:
        x = np.maximum(np.asarray(x0, dtype=float).reshape(-1), 0.0)
    if system.size == 0:
        return PsorResult(x, 0, 0.0)
    diagonal = matrix.diagonal()
    if np.any(diagonal <= 0):
        raise ValueError("PSOR needs a positive diagonal.")

    colored = None
    if (
        coloring is not None
        and system.size >= PSOR_COLORED_MIN_SIZE
        and _ColoredSweep.is_valid(matrix, np.asarray(coloring))
    ):
        colored = _ColoredSweep(matrix, np.asarray(coloring))

    for iteration in range(1, int(settings.max_iters) + 1):
        if colored is not None:
            change = colored.sweep(x, rhs, settings.omega)
        else:
            change = _lexicographic_sweep(matrix, diagonal, x, rhs, settings.omega)
        if change < settings.tol:
            return PsorResult(x, iteration, complementarity_residual(system, x))

    residual = complementarity_residual(system, x)
    raise ConvergenceError(
        f"PSOR did not converge in {settings.max_iters} sweeps "
        f"(last update {change:.3e}, residual {residual:.3e}).",
        residual=residual,
        iterations=int(settings.max_iters),
    )
