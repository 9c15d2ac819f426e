"""
Growth and derivative estimates of a trajectory around free boundary points.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-10-13
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass, field, replace
import logging
import math
from typing import Sequence

import numpy as np
from scipy.stats import linregress

# Local Libraries
from porosim.constants.analysis.analysis_constants import SUP_REFINE
from porosim.errors import CylinderError, PreconditionError
from porosim.geometry.cylinder import ParabolicCylinder, cylinder_nodes, sup_on_cylinder
from porosim.geometry.field import ScalarField
from porosim.solvers.diagnostics import positivity_eps

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegularityReport:
    """
    Cylinder suprema of u around a point z0 = (x0, t0).

    rho_values is strictly decreasing and aligned with sup_values. Radii whose
    cylinder leaves the sampled region or holds no sample are listed in
    skipped_rho.
    """

    z0: tuple[float, ...]
    rho_values: list[float]
    sup_values: list[float]
    fitted_exponent: float
    fitted_c_lower: float
    fitted_C_upper: float
    M_bound: float = math.nan
    skipped_rho: list[float] = field(default_factory=list)

    def as_dict(self) -> dict[str, float]:
        return {
            "exponent": self.fitted_exponent,
            "c_lower": self.fitted_c_lower,
            "C_upper": self.fitted_C_upper,
            "M_bound": self.M_bound,
            "skipped_rho": float(len(self.skipped_rho)),
        }


def _nearby_values(u: ScalarField, z0: Sequence[float]) -> np.ndarray:
    """Values of the slice at t0 on nodes within one cell of x0 in every axis."""
    grid = u.grid
    time_index = u.time_grid.index_of(z0[-1])
    positions = grid.positions()
    offsets = np.abs(positions - np.asarray(z0[:-1], dtype=float))
    near = np.all(offsets <= np.asarray(grid.h) * (1.0 + 1e-9), axis=-1)
    return u.values[time_index][near]


def _sweep(
    u: ScalarField, z0: Sequence[float], rho_list: Sequence[float], refine: int
) -> tuple[list[float], list[float], float, list[float]]:
    candidates = sorted({float(rho) for rho in rho_list}, reverse=True)
    if not candidates:
        raise ValueError("The radius sweep needs at least one radius.")
    rho_values, sup_values, skipped = [], [], []
    for rho in candidates:
        try:
            sup = sup_on_cylinder(u, ParabolicCylinder.at(z0, rho), refine)
        except CylinderError as error:
            logger.debug("Radius %g skipped at %s: %s", rho, tuple(z0), error)
            skipped.append(rho)
            continue
        rho_values.append(rho)
        sup_values.append(max(0.0, sup))
    if not rho_values:
        raise CylinderError(
            f"No radius of {candidates} gives a sampled cylinder around {tuple(z0)}."
        )
    if skipped:
        logger.warning("Radii %s skipped at %s", skipped, tuple(z0))
    exponent = math.nan
    if len(rho_values) >= 2 and min(sup_values) > 0:
        exponent = float(linregress(np.log(rho_values), np.log(sup_values)).slope)
    return rho_values, sup_values, exponent, skipped


def nondegeneracy_sweep(
    u: ScalarField,
    z0: Sequence[float],
    rho_list: Sequence[float],
    refine: int = SUP_REFINE,
) -> RegularityReport:
    """
    Lower growth of sup over Q_rho(z0) of u, fitted_c_lower = min sup / rho^2.

    Args:
        u (ScalarField):
            Trajectory.
        z0 (Sequence[float]):
            Space-time point (x[, y], t) in the closure of {u > eps}.
        rho_list (Sequence[float]):
            Cylinder radii; sorted decreasing, duplicates dropped. A radius
            without a sampled cylinder is skipped and listed in skipped_rho.
        refine (int):
            Sub-cell sampling of the suprema.

    Returns:
        RegularityReport:
            Suprema, log-log exponent and the constant.

    Raises:
        PreconditionError:
            If no node within one cell of z0 has u > eps.
        CylinderError:
            If no radius gives a sampled cylinder.
    """
    eps = positivity_eps(u)
    if not np.any(_nearby_values(u, z0) > eps):
        raise PreconditionError(f"No positive sample of u within one cell of {tuple(z0)}.")
    rho_values, sup_values, exponent, skipped = _sweep(u, z0, rho_list, refine)
    ratios = [sup / rho**2 for sup, rho in zip(sup_values, rho_values)]
    return RegularityReport(
        z0=tuple(float(c) for c in z0),
        rho_values=rho_values,
        sup_values=sup_values,
        fitted_exponent=exponent,
        fitted_c_lower=min(ratios),
        fitted_C_upper=max(ratios),
        skipped_rho=skipped,
    )


def quadratic_growth_sweep(
    u: ScalarField,
    z0: Sequence[float],
    rho_list: Sequence[float],
    refine: int = SUP_REFINE,
) -> RegularityReport:
    """
    Upper growth of sup over Q_rho(z0) of u, fitted_C_upper = max sup / rho^2.

    z0 must be a free boundary point: both {u > eps} and {u <= eps} have a node
    within one cell of it.
    """
    eps = positivity_eps(u)
    nearby = _nearby_values(u, z0)
    if not (np.any(nearby > eps) and np.any(nearby <= eps)):
        raise PreconditionError(f"{tuple(z0)} is not on the free boundary.")
    rho_values, sup_values, exponent, skipped = _sweep(u, z0, rho_list, refine)
    ratios = [sup / rho**2 for sup, rho in zip(sup_values, rho_values)]
    return RegularityReport(
        z0=tuple(float(c) for c in z0),
        rho_values=rho_values,
        sup_values=sup_values,
        fitted_exponent=exponent,
        fitted_c_lower=min(ratios),
        fitted_C_upper=max(ratios),
        skipped_rho=skipped,
    )


def _shifted(values: np.ndarray, offsets: Sequence[int]) -> np.ndarray:
    """Interior block of values moved by offsets (time first)."""
    return values[
        tuple(
            slice(1 + offset, values.shape[axis] - 1 + offset)
            for axis, offset in enumerate(offsets)
        )
    ]


def derivative_bounds(u: ScalarField, z0: Sequence[float], rho: float) -> float:
    """
    Largest max_ij |d_ij u| + |u_t| over the nodes of Q_rho(z0) whose central
    difference stencil lies in {u > eps}.

    Raises:
        CylinderError:
            If the cylinder leaves the domain or no node has its stencil in
            {u > eps}.
    """
    grid = u.grid
    dim = grid.dim
    values = u.values
    eps = positivity_eps(u)
    positive = values > eps
    centre = (0,) * (dim + 1)

    def unit(axis: int, step: int) -> tuple[int, ...]:
        offsets = [0] * (dim + 1)
        offsets[axis] = step
        return tuple(offsets)

    stencil_ok = _shifted(positive, centre).copy()
    for axis in range(dim + 1):
        for step in (-1, 1):
            stencil_ok &= _shifted(positive, unit(axis, step))
    if dim == 2:
        for di in (-1, 1):
            for dj in (-1, 1):
                stencil_ok &= _shifted(positive, (0, di, dj))

    dt = u.time_grid.dt
    time_derivative = (
        _shifted(values, unit(0, 1)) - _shifted(values, unit(0, -1))
    ) / (2.0 * dt)
    second = [
        (
            _shifted(values, unit(axis + 1, 1))
            - 2.0 * _shifted(values, centre)
            + _shifted(values, unit(axis + 1, -1))
        )
        / grid.h[axis] ** 2
        for axis in range(dim)
    ]
    if dim == 2:
        second.append(
            (
                _shifted(values, (0, 1, 1))
                - _shifted(values, (0, 1, -1))
                - _shifted(values, (0, -1, 1))
                + _shifted(values, (0, -1, -1))
            )
            / (4.0 * grid.h[0] * grid.h[1])
        )
    bound = np.max(np.abs(np.stack(second)), axis=0) + np.abs(time_derivative)

    indices = np.stack(cylinder_nodes(u, ParabolicCylinder.at(z0, rho))) - 1
    limits = np.asarray(stencil_ok.shape)[:, np.newaxis]
    inside = np.all((indices >= 0) & (indices < limits), axis=0)
    indices = indices[:, inside]
    usable = stencil_ok[tuple(indices)]
    if not np.any(usable):
        raise CylinderError(
            f"No node of Q_{rho:g}{tuple(z0)} has its difference stencil in {{u > eps}}."
        )
    return float(np.max(bound[tuple(indices[:, usable])]))


def regularity_report(
    u: ScalarField,
    z0: Sequence[float],
    rho_list: Sequence[float],
    refine: int = SUP_REFINE,
) -> RegularityReport:
    """
    Quadratic growth sweep at a free boundary point completed with the
    derivative bound on the largest cylinder (NaN when no stencil fits).
    """
    report = quadratic_growth_sweep(u, z0, rho_list, refine)
    try:
        m_bound = derivative_bounds(u, z0, report.rho_values[0])
    except CylinderError as error:
        logger.warning("No derivative bound at %s: %s", report.z0, error)
        m_bound = math.nan
    return replace(report, M_bound=m_bound)
