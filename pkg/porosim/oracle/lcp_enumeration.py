"""
Brute force references for the complementarity solver.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-08-18
"""

# Python Libraries
from __future__ import annotations
import logging
from typing import Sequence

import numpy as np

# Local Libraries
from porosim.constants.oracle.oracle_constants import (
    ENUMERATION_TOLERANCE,
    MAX_ENUMERATION_SIZE,
)
from porosim.errors import OracleError
from porosim.solvers.lcp import LcpSystem

logger: logging.Logger = logging.getLogger(__name__)


def brute_force_lcp(system: LcpSystem) -> np.ndarray:
    """
    Solves the LCP by trying every set S of free unknowns.

    For each S the equations A_SS x_S = b_S are solved with x = 0 outside S; the
    first candidate with x >= 0 and A x - b >= 0 (up to a relative slack) is the
    solution.

    Args:
        system (LcpSystem):
            At most 20 unknowns.

    Returns:
        np.ndarray:
            The solution.

    Raises:
        ValueError:
            For more than 20 unknowns.
        OracleError:
            If no candidate is feasible.
    """
    size = system.size
    if size > MAX_ENUMERATION_SIZE:
        raise ValueError(
            f"Enumeration is limited to {MAX_ENUMERATION_SIZE} unknowns, got {size}."
        )
    matrix = system.matrix.toarray()
    rhs = system.rhs
    slack_tol = ENUMERATION_TOLERANCE * max(1.0, float(np.max(np.abs(rhs), initial=0.0)))

    for mask in range(2**size):
        free = np.array([(mask >> i) & 1 for i in range(size)], dtype=bool)
        x = np.zeros(size)
        if free.any():
            try:
                x[free] = np.linalg.solve(matrix[np.ix_(free, free)], rhs[free])
            except np.linalg.LinAlgError:
                continue
        if np.any(x < -slack_tol):
            continue
        slack = matrix @ x - rhs
        if np.any(slack[~free] < -slack_tol):
            continue
        logger.debug("Enumeration: %d free unknowns of %d", int(free.sum()), size)
        return np.maximum(x, 0.0)
    raise OracleError(f"No active set of the {size}-unknown system is feasible.")


def random_lcp_system(size: int, rng: np.random.Generator | int | None = None) -> LcpSystem:
    """
    Symmetric, strictly diagonally dominant system with positive diagonal,
    hence symmetric positive definite, and a right-hand side in [-1, 1].
    """
    rng = np.random.default_rng(rng)
    off_diagonal = rng.uniform(-1.0, 1.0, (size, size))
    off_diagonal = np.triu(off_diagonal, 1)
    off_diagonal = off_diagonal + off_diagonal.T
    diagonal = np.abs(off_diagonal).sum(axis=1) + rng.uniform(0.5, 1.5, size)
    return LcpSystem(off_diagonal + np.diag(diagonal), rng.uniform(-1.0, 1.0, size))


def reference_heat_system(
    u_prev: np.ndarray,
    f: np.ndarray,
    dt: float,
    h: Sequence[float],
    boundary: np.ndarray,
) -> LcpSystem:
    """
    Implicit Euler step u / dt - Delta_h u = u_prev / dt + f assembled node by
    node into a dense matrix, interior nodes in C order.

    Args:
        u_prev (np.ndarray):
            Previous slice including boundary nodes.
        f (np.ndarray):
            Source slice at the new time level.
        dt (float):
            Time step.
        h (Sequence[float]):
            Spacing per axis.
        boundary (np.ndarray):
            Slice whose boundary nodes hold the boundary data.
    """
    u_prev = np.asarray(u_prev, dtype=float)
    shape = u_prev.shape
    interior_shape = tuple(n - 2 for n in shape)
    numbering = {
        tuple(i + 1 for i in index): k for k, index in enumerate(np.ndindex(*interior_shape))
    }
    size = len(numbering)
    matrix = np.zeros((size, size))
    rhs = np.zeros(size)
    for node, row in numbering.items():
        matrix[row, row] = 1.0 / dt
        rhs[row] = u_prev[node] / dt + f[node]
        for axis, spacing in enumerate(h):
            weight = 1.0 / spacing**2
            matrix[row, row] += 2.0 * weight
            for step in (-1, 1):
                neighbour = list(node)
                neighbour[axis] += step
                neighbour = tuple(neighbour)
                if neighbour in numbering:
                    matrix[row, numbering[neighbour]] -= weight
                else:
                    rhs[row] += weight * boundary[neighbour]
    return LcpSystem(matrix, rhs)
