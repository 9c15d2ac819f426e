"""
Closed-form solutions of the normalized obstacle problem

    Delta u - u_t = f on {u > 0},  u >= 0,

with f = 1. Each solution evaluates u, the force and the analytic PDE defect,
and none of them goes through the solver's profile code.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-10-09
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass, field
import math
from typing import Sequence

import numpy as np

# Local Libraries
from porosim.constants.oracle import ExactSolutionKind
from porosim.errors import PreconditionError
from porosim.geometry.field import ScalarField
from porosim.geometry.grid import Grid, TimeGrid


@dataclass(frozen=True, eq=False)
class ExactSolution:
    """
    Closed-form u(x, t) with f = 1.

    Defect identities on {u > 0}:
        HALF_SPACE: u = s^2 / 2 with s = x . e, so Delta u = |e|^2 = 1, u_t = 0.
        POLYNOMIAL: u = m t + x^T M x, so Delta u = 2 Tr M, u_t = m.
        RADIAL_STATIONARY: u(r) = (r^2 - r0^2) / 4 - r0^2 / 2 ln(r / r0), so
            u'' + u' / r = 1/2 + r0^2 / (2 r^2) + 1/2 - r0^2 / (2 r^2) = 1.
    """

    kind: ExactSolutionKind
    dim: int
    params: dict = field(default_factory=dict)

    def _offset(self, positions: np.ndarray) -> np.ndarray:
        positions = np.asarray(positions, dtype=float)
        if positions.shape[-1] != self.dim:
            raise ValueError(
                f"Positions with {positions.shape[-1]} coordinates given to a "
                f"{self.dim}D solution."
            )
        return positions - np.asarray(self.params.get("center", np.zeros(self.dim)))

    def u(self, positions: np.ndarray, t: np.ndarray | float = 0.0) -> np.ndarray:
        x = self._offset(positions)
        t = np.asarray(t, dtype=float)
        match self.kind:
            case ExactSolutionKind.HALF_SPACE:
                s = np.maximum(x @ self.params["e"], 0.0)
                values = 0.5 * s * s
            case ExactSolutionKind.POLYNOMIAL:
                M = self.params["M"]
                values = self.params["m"] * t + np.einsum("...i,ij,...j->...", x, M, x)
            case ExactSolutionKind.RADIAL_STATIONARY:
                r0 = self.params["r0"]
                r = np.maximum(np.linalg.norm(x, axis=-1), r0)
                values = 0.25 * (r * r - r0 * r0) - 0.5 * r0 * r0 * np.log(r / r0)
        return np.broadcast_to(values, np.broadcast_shapes(np.shape(values), t.shape)).copy()

    def f(self, positions: np.ndarray, t: np.ndarray | float = 0.0) -> np.ndarray:
        shape = np.broadcast_shapes(np.shape(positions)[:-1], np.shape(t))
        return np.ones(shape)

    def pde_residual(self, positions: np.ndarray, t: np.ndarray | float = 0.0) -> np.ndarray:
        """
        Delta u - u_t - f from the analytic derivatives; zero where u > 0 and
        reported as zero on the contact set.
        """
        x = self._offset(positions)
        t = np.asarray(t, dtype=float)
        match self.kind:
            case ExactSolutionKind.HALF_SPACE:
                e = self.params["e"]
                laplacian = np.full(x.shape[:-1], float(e @ e))
                time_derivative = 0.0
            case ExactSolutionKind.POLYNOMIAL:
                laplacian = np.full(x.shape[:-1], 2.0 * float(np.trace(self.params["M"])))
                time_derivative = self.params["m"]
            case ExactSolutionKind.RADIAL_STATIONARY:
                r0 = self.params["r0"]
                r = np.maximum(np.linalg.norm(x, axis=-1), r0)
                first = 0.5 * r - 0.5 * r0 * r0 / r
                second = 0.5 + 0.5 * r0 * r0 / (r * r)
                laplacian = second + first / r
                time_derivative = 0.0
        defect = laplacian - time_derivative - self.f(positions, t)
        return np.where(self.u(positions, t) > 0, defect, 0.0)

    def sample(self, grid: Grid, time_grid: TimeGrid, name: str = "u") -> ScalarField:
        return ScalarField.from_function(grid, time_grid, self.u, name)

    def forcing_field(self, grid: Grid, time_grid: TimeGrid) -> ScalarField:
        """f in the statement convention."""
        return ScalarField.from_function(grid, time_grid, self.f, "f_statement")


def exact_half_space(e: Sequence[float], center: Sequence[float] | None = None) -> ExactSolution:
    """
    u = 1/2 ((x . e)_+)^2, free boundary on the hyperplane x . e = 0.

    Raises:
        PreconditionError:
            If e is not a unit vector.
    """
    e = np.atleast_1d(np.asarray(e, dtype=float))
    if abs(float(np.linalg.norm(e)) - 1.0) > 1e-12:
        raise PreconditionError(f"e must be a unit vector, |e| = {np.linalg.norm(e):.6g}.")
    params = {"e": e}
    if center is not None:
        params["center"] = np.asarray(center, dtype=float)
    return ExactSolution(ExactSolutionKind.HALF_SPACE, e.size, params)


def exact_polynomial(m: float, M: np.ndarray | Sequence | float) -> ExactSolution:
    """
    u = m t + x^T M x, admissible when Delta u - u_t = 2 Tr M - m = 1 and u >= 0
    on the backward cylinder t <= 0, i.e. M positive semidefinite and m <= 0.

    Raises:
        PreconditionError:
            Naming the violated condition.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != M.shape[1] or M.shape[0] not in (1, 2):
        raise PreconditionError(f"M must be a 1x1 or 2x2 matrix, got shape {M.shape}.")
    if not np.allclose(M, M.T, atol=1e-12):
        raise PreconditionError("M must be symmetric.")
    condition = 2.0 * float(np.trace(M)) - m
    if not math.isclose(condition, 1.0, rel_tol=1e-12, abs_tol=1e-12):
        raise PreconditionError(f"2 Tr M - m = {condition:.12g} instead of 1.")
    eigenvalues = np.linalg.eigvalsh(M)
    if eigenvalues.min() < -1e-12:
        raise PreconditionError(
            f"M has the negative eigenvalue {eigenvalues.min():.6g}; u >= 0 fails."
        )
    if m > 0:
        raise PreconditionError(f"m = {m:g} > 0 makes u(0, t) = m t negative for t < 0.")
    return ExactSolution(
        ExactSolutionKind.POLYNOMIAL, M.shape[0], {"m": float(m), "M": M}
    )


def exact_radial_stationary(
    r0: float, center: Sequence[float] = (0.0, 0.0)
) -> ExactSolution:
    """
    Stationary 2D solution vanishing on the disc |x - center| <= r0 with u and
    grad u continuous across the circle.
    """
    if not r0 > 0:
        raise PreconditionError(f"r0 must be positive, got {r0}.")
    return ExactSolution(
        ExactSolutionKind.RADIAL_STATIONARY,
        2,
        {"r0": float(r0), "center": np.asarray(center, dtype=float)},
    )
