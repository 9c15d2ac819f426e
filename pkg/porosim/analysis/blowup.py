"""
Parabolic rescaling at free boundary points and identification of the limit
profile.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-09-22
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass
import logging
import math
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

# Local Libraries
from porosim.constants.analysis import BlowupKind
from porosim.constants.analysis.analysis_constants import BLOWUP_DEFAULTS_DICT
from porosim.constants.geometry import UnitSystem
from porosim.errors import BlowupWindowError, PreconditionError
from porosim.geometry.field import ScalarField
from porosim.geometry.grid import Grid, TimeGrid, make_grid, make_time_grid

logger: logging.Logger = logging.getLogger(__name__)


def reference_cylinder(
    dim: int,
    n_cells: int = BLOWUP_DEFAULTS_DICT["reference_n_cells"],
    n_steps: int = BLOWUP_DEFAULTS_DICT["reference_n_steps"],
) -> tuple[Grid, TimeGrid]:
    """Grid of [-1, 1]^dim x [-1, 0] on which rescaled fields are sampled."""
    return (
        make_grid(dim, -1.0, 2.0, n_cells, UnitSystem.NORMALIZED),
        make_time_grid(-1.0, 1.0 / n_steps, n_steps),
    )


def max_blowup_scale(u: ScalarField, z_star: Sequence[float], f_at: float) -> float:
    """Largest lambda whose rescaled window stays inside the sampled region."""
    grid = u.grid
    root_f = math.sqrt(f_at)
    space = min(
        min(x - lo, hi - x)
        for x, lo, hi in zip(z_star[:-1], grid.origin, grid.upper)
    )
    elapsed = z_star[-1] - u.time_grid.t0
    if space < 0 or elapsed < 0 or z_star[-1] > u.time_grid.t_end * (1 + 1e-12) + 1e-12:
        return 0.0
    return min(space * root_f, math.sqrt(elapsed * f_at))


def rescale_blowup(
    u: ScalarField,
    z_star: Sequence[float],
    lam: float,
    f_at: float,
    n_cells: int = BLOWUP_DEFAULTS_DICT["reference_n_cells"],
    n_steps: int = BLOWUP_DEFAULTS_DICT["reference_n_steps"],
) -> ScalarField:
    """
    u_lambda(xi, s) = u(x* + xi lambda / sqrt(f), t* + s lambda^2 / f) / lambda^2
    on the reference cylinder.

    Args:
        u (ScalarField):
            Trajectory.
        z_star (Sequence[float]):
            Free boundary point (x[, y], t).
        lam (float):
            Zoom factor.
        f_at (float):
            Force density of the statement convention at z_star.
        n_cells (int):
            Reference cells per axis of [-1, 1].
        n_steps (int):
            Reference time steps over [-1, 0].

    Returns:
        ScalarField:
            The rescaled field, named "u_lambda".

    Raises:
        PreconditionError:
            If f_at is not positive.
        BlowupWindowError:
            If the window leaves the sampled region; carries the largest
            admissible lambda.
    """
    if not (np.isfinite(f_at) and f_at > 0):
        raise PreconditionError(f"Blow-ups need f(z*) > 0, got {f_at}.")
    if not lam > 0:
        raise PreconditionError(f"lambda must be positive, got {lam}.")
    max_lambda = max_blowup_scale(u, z_star, f_at)
    if lam > max_lambda * (1.0 + 1e-9):
        raise BlowupWindowError(
            f"lambda = {lam:g} zooms out of the sampled region around {tuple(z_star)}; "
            f"the largest admissible value is {max_lambda:.6g}.",
            max_lambda=max_lambda,
        )

    grid, time_grid = reference_cylinder(u.grid.dim, n_cells, n_steps)
    space_factor = lam / math.sqrt(f_at)
    time_factor = lam**2 / f_at
    x_star = np.asarray(z_star[:-1], dtype=float)

    positions = x_star + space_factor * grid.positions()
    times = z_star[-1] + time_factor * time_grid.times
    points = np.concatenate(
        [
            np.broadcast_to(
                times.reshape((-1,) + (1,) * (grid.dim + 1)),
                (times.size, *grid.shape, 1),
            ),
            np.broadcast_to(positions, (times.size, *positions.shape)),
        ],
        axis=-1,
    )
    # Rounding can push window corners past the sampled box by an ulp.
    lower = np.array([u.time_grid.t0, *u.grid.origin])
    upper = np.array([u.time_grid.t_end, *u.grid.upper])
    points = np.clip(points, lower, upper)
    values = u.interpolator()(points) / lam**2
    return ScalarField(grid, time_grid, values, "u_lambda")


@dataclass(frozen=True, eq=False)
class BlowupFit:
    """
    Least-squares match of a rescaled field against the half-space family
    1/2 ((xi . e)_+)^2 and the polynomial family m s + xi^T M xi.

    Both parameter sets and residuals are kept; kind names the family with the
    smaller residual, or UNRESOLVED when both exceed the threshold. The
    polynomial fit imposes Delta u - u_t = 1, i.e. m = 2 Tr M - 1; trace_defect
    is Tr M - (m + 1), the defect of the condition written without the factor
    1/2 in the quadratic form.
    """

    kind: BlowupKind
    e: np.ndarray
    m: float
    M: np.ndarray
    fit_residual: float
    half_space_residual: float
    polynomial_residual: float
    trace_defect: float
    psd: bool


def _relative_residual(values: np.ndarray, model: np.ndarray, norm: float) -> float:
    return float(np.linalg.norm(values - model) / norm)


def _half_space_model(xi: np.ndarray, e: np.ndarray) -> np.ndarray:
    return 0.5 * np.maximum(xi @ e, 0.0) ** 2


def _fit_half_space(
    xi: np.ndarray, values: np.ndarray, norm: float, n_angles: int
) -> tuple[np.ndarray, float]:
    dim = xi.shape[-1]
    if dim == 1:
        candidates = [np.array([1.0]), np.array([-1.0])]
        residuals = [
            _relative_residual(values, _half_space_model(xi, e), norm) for e in candidates
        ]
        best = int(np.argmin(residuals))
        return candidates[best], residuals[best]

    def residual_at(theta: float) -> float:
        e = np.array([math.cos(theta), math.sin(theta)])
        return _relative_residual(values, _half_space_model(xi, e), norm)

    angles = 2.0 * math.pi * np.arange(n_angles) / n_angles
    coarse = [residual_at(theta) for theta in angles]
    start = float(angles[int(np.argmin(coarse))])
    step = 2.0 * math.pi / n_angles
    refined = minimize_scalar(
        residual_at, bounds=(start - step, start + step), method="bounded"
    )
    theta = float(refined.x) if refined.fun < min(coarse) else start
    e = np.array([math.cos(theta), math.sin(theta)])
    return e, residual_at(theta)


def _fit_polynomial(
    xi: np.ndarray, s: np.ndarray, values: np.ndarray, norm: float
) -> tuple[float, np.ndarray, float]:
    """
    Fits u + s = sum_ij M_ij (xi_i xi_j + 2 delta_ij s), which is the family
    m s + xi^T M xi with m = 2 Tr M - 1 substituted.
    """
    dim = xi.shape[-1]
    columns = [xi[:, i] ** 2 + 2.0 * s for i in range(dim)]
    if dim == 2:
        columns.append(2.0 * xi[:, 0] * xi[:, 1])
    coefficients, *_ = np.linalg.lstsq(np.column_stack(columns), values + s, rcond=None)
    M = np.diag(coefficients[:dim])
    if dim == 2:
        M[0, 1] = M[1, 0] = coefficients[2]
    m = 2.0 * float(np.trace(M)) - 1.0
    model = m * s + np.einsum("ki,ij,kj->k", xi, M, xi)
    return m, M, _relative_residual(values, model, norm)


def fit_blowup(
    u_lambda: ScalarField,
    residual_threshold: float = BLOWUP_DEFAULTS_DICT["residual_threshold"],
    n_angles: int = BLOWUP_DEFAULTS_DICT["n_angles"],
) -> BlowupFit:
    """
    Matches a rescaled field against both blow-up families.

    Args:
        u_lambda (ScalarField):
            Field on the reference cylinder.
        residual_threshold (float):
            Relative L2 residual above which a family is rejected.
        n_angles (int):
            Directions of the coarse angular search in 2D.

    Returns:
        BlowupFit:
            Both fits and the selected family.
    """
    dim = u_lambda.grid.dim
    xi = np.broadcast_to(
        u_lambda.grid.positions(), (u_lambda.time_grid.n_steps + 1, *u_lambda.grid.shape, dim)
    ).reshape(-1, dim)
    s = np.broadcast_to(
        u_lambda.times.reshape((-1,) + (1,) * dim), u_lambda.values.shape
    ).reshape(-1)
    values = u_lambda.values.reshape(-1)
    norm = float(np.linalg.norm(values))

    if norm == 0.0:
        logger.warning("Rescaled field vanishes identically; no blow-up family applies.")
        return BlowupFit(
            kind=BlowupKind.UNRESOLVED,
            e=np.eye(dim)[0],
            m=math.nan,
            M=np.full((dim, dim), math.nan),
            fit_residual=math.inf,
            half_space_residual=math.inf,
            polynomial_residual=math.inf,
            trace_defect=math.nan,
            psd=False,
        )

    e, half_space_residual = _fit_half_space(xi, values, norm, n_angles)
    m, M, polynomial_residual = _fit_polynomial(xi, s, values, norm)
    eigenvalues = np.linalg.eigvalsh(M)
    psd = bool(eigenvalues.min() >= -1e-8 * max(1.0, float(np.abs(eigenvalues).max())))

    if min(half_space_residual, polynomial_residual) > residual_threshold:
        kind = BlowupKind.UNRESOLVED
    elif half_space_residual <= polynomial_residual:
        kind = BlowupKind.HALF_SPACE
    else:
        kind = BlowupKind.POLYNOMIAL
    return BlowupFit(
        kind=kind,
        e=e,
        m=m,
        M=M,
        fit_residual=min(half_space_residual, polynomial_residual),
        half_space_residual=half_space_residual,
        polynomial_residual=polynomial_residual,
        trace_defect=float(np.trace(M)) - (m + 1.0),
        psd=psd,
    )
