"""
Finite difference operators of the implicit Euler heat step.

Unknowns are the interior nodes in C order; boundary nodes carry data and
enter the right-hand side.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-14
"""

# Python Libraries
from __future__ import annotations
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import factorized

# Local Libraries
from porosim.geometry.grid import Grid
from porosim.solvers.lcp import LcpSystem


def discrete_laplacian(values: np.ndarray, h: Sequence[float]) -> np.ndarray:
    """
    Standard (2 dim + 1)-point Laplacian at the interior nodes.

    Args:
        values (np.ndarray):
            Array whose trailing len(h) axes are the grid axes. Leading axes,
            e.g. time, are carried along.
        h (Sequence[float]):
            Grid spacing per axis.

    Returns:
        np.ndarray:
            Laplacian with the trailing axes reduced to the interior shape.
    """
    values = np.asarray(values, dtype=float)
    dim = len(h)
    inner = (Ellipsis,) + (slice(1, -1),) * dim
    center = values[inner]
    total = np.zeros_like(center)
    for axis, spacing in enumerate(h):
        forward = [slice(1, -1)] * dim
        backward = [slice(1, -1)] * dim
        forward[axis] = slice(2, None)
        backward[axis] = slice(None, -2)
        total += (
            values[(Ellipsis, *forward)] - 2.0 * center + values[(Ellipsis, *backward)]
        ) / spacing**2
    return total


def laplacian_matrix(grid: Grid) -> sp.csr_matrix:
    """Interior Laplacian as a Kronecker sum of 1D second differences."""
    factors = []
    for n, spacing in zip(grid.n_cells, grid.h):
        size = n - 1
        factors.append(
            sp.diags([1.0, -2.0, 1.0], [-1, 0, 1], shape=(size, size)) / spacing**2
        )
    if grid.dim == 1:
        return sp.csr_matrix(factors[0])
    identities = [sp.identity(n - 1) for n in grid.n_cells]
    return sp.csr_matrix(
        sp.kron(factors[0], identities[1]) + sp.kron(identities[0], factors[1])
    )


def boundary_coupling(grid: Grid, boundary_slice: np.ndarray) -> np.ndarray:
    """
    Contribution of the boundary nodes to the interior Laplacian, flattened.
    """
    full = np.array(boundary_slice, dtype=float)
    full[grid.interior] = 0.0
    return discrete_laplacian(full, grid.h).reshape(-1)


def red_black_coloring(grid: Grid) -> np.ndarray:
    index = np.indices(grid.interior_shape).sum(axis=0)
    return (index % 2).reshape(-1)


class HeatStepOperator:
    """
    Implicit Euler step of u_t - Delta u = s on a fixed grid and time step.

    The matrix I / dt - Delta_h is assembled once; every step only rebuilds the
    right-hand side u_prev / dt + s + boundary coupling.
    """

    def __init__(self, grid: Grid, dt: float) -> None:
        if not dt > 0:
            raise ValueError(f"dt must be positive, got {dt}.")
        self.grid = grid
        self.dt = dt
        size = int(np.prod(grid.interior_shape))
        self.matrix: sp.csr_matrix = sp.csr_matrix(
            sp.identity(size) / dt - self._laplacian(grid)
        )
        self.coloring: np.ndarray = red_black_coloring(grid)
        self._solve = None

    def _laplacian(self, grid: Grid) -> sp.csr_matrix:
        return laplacian_matrix(grid)

    def system(
        self, u_prev: np.ndarray, source: np.ndarray, boundary_slice: np.ndarray
    ) -> LcpSystem:
        """
        Complementarity system of one step.

        Args:
            u_prev (np.ndarray):
                Previous slice, grid shape.
            source (np.ndarray):
                Source slice at the new time level, grid shape.
            boundary_slice (np.ndarray):
                Slice whose boundary nodes hold the new boundary data.
        """
        interior = self.grid.interior
        rhs = (
            np.asarray(u_prev)[interior].reshape(-1) / self.dt
            + np.asarray(source)[interior].reshape(-1)
            + boundary_coupling(self.grid, boundary_slice)
        )
        return LcpSystem(self.matrix, rhs)

    def solve_linear(self, system: LcpSystem) -> np.ndarray:
        """Unconstrained solve with a cached sparse LU factorisation."""
        if self._solve is None:
            self._solve = factorized(sp.csc_matrix(self.matrix))
        return self._solve(system.rhs)

    def full_slice(
        self, interior_values: np.ndarray, boundary_slice: np.ndarray
    ) -> np.ndarray:
        full = np.array(boundary_slice, dtype=float)
        full[self.grid.interior] = np.asarray(interior_values).reshape(
            self.grid.interior_shape
        )
        return full
