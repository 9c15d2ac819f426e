"""
Conversion between the physical membrane equation

    (2 / T1) u_t - c_s^2 Delta u = f / rho

and the normalized form u_t - Delta u = f with unit coefficients.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-10
"""

# Python Libraries
from __future__ import annotations
import logging

# Local Libraries
from porosim.constants.geometry import UnitSystem
from porosim.forcing.density import ForcingSpec, forcing_density
from porosim.geometry.field import ScalarField
from porosim.solvers.problem import (
    BoundarySpec,
    NormalizationRecord,
    ObstacleProblemSpec,
)

logger: logging.Logger = logging.getLogger(__name__)


def normalize_field(
    field: ScalarField, record: NormalizationRecord, value_scale: float | None = None
) -> ScalarField:
    """
    Expresses a physical field in normalized units.

    Args:
        field (ScalarField):
            Field in physical units.
        record (NormalizationRecord):
            Scales.
        value_scale (float | None):
            Unit of the values, record.u_scale by default (use record.f_scale
            for force densities).
    """
    value_scale = record.u_scale if value_scale is None else value_scale
    return ScalarField(
        field.grid.scaled(record.space_scale, UnitSystem.NORMALIZED),
        field.time_grid.scaled(record.time_scale),
        field.values / value_scale,
        field.name,
    )


def denormalize_field(
    field: ScalarField, record: NormalizationRecord, value_scale: float | None = None
) -> ScalarField:
    """Inverse of `normalize_field`."""
    value_scale = record.u_scale if value_scale is None else value_scale
    return ScalarField(
        field.grid.scaled(1.0 / record.space_scale, UnitSystem.PHYSICAL),
        field.time_grid.scaled(1.0 / record.time_scale),
        field.values * value_scale,
        field.name,
    )


def normalize(spec: ObstacleProblemSpec) -> ObstacleProblemSpec:
    """
    Rescales a physical problem to unit coefficients on u_t and Delta u.

    With time_scale = T1 / 2, space_scale = c_s T1 / 2 and
    f_scale = 4 rho U / T1^2 both coefficients of the quasi-static equation
    become 4 U / T1^2, which the division by f_scale removes. The forcing is
    evaluated on the physical grid and carried as a table.

    Args:
        spec (ObstacleProblemSpec):
            Problem in physical units. A normalized problem is returned as is.

    Returns:
        ObstacleProblemSpec:
            The normalized problem with its NormalizationRecord.

    Raises:
        ConfigError:
            For T1 = inf, which has no quasi-static limit.
    """
    if spec.is_normalized:
        return spec
    record = NormalizationRecord.from_constants(spec.constants, spec.u_scale)
    grid = spec.grid.scaled(record.space_scale, UnitSystem.NORMALIZED)
    time_grid = spec.time_grid.scaled(record.time_scale)

    f = forcing_density(spec.forcing, spec.grid, spec.time_grid)
    forcing = ForcingSpec.tabulated(
        normalize_field(f, record, record.f_scale),
        normal_dir=spec.forcing.normal_dir,
        reference_area=spec.forcing.reference_area,
    )
    boundary = spec.boundary
    if boundary.trace is not None:
        boundary = BoundarySpec(boundary.kind, normalize_field(boundary.trace, record))

    logger.debug("Normalized problem with %s", record)
    return ObstacleProblemSpec(
        grid=grid,
        time_grid=time_grid,
        constants=spec.constants,
        forcing=forcing,
        boundary=boundary,
        initial_u=spec.initial_u / record.u_scale,
        u_scale=spec.u_scale,
        normalization=record,
    )


def denormalize(spec: ObstacleProblemSpec) -> ObstacleProblemSpec:
    """
    Inverse of `normalize`. The forcing stays tabulated.
    """
    if not spec.is_normalized:
        return spec
    record = spec.normalization
    f = forcing_density(spec.forcing, spec.grid, spec.time_grid)
    forcing = ForcingSpec.tabulated(
        denormalize_field(f, record, record.f_scale),
        normal_dir=spec.forcing.normal_dir,
        reference_area=spec.forcing.reference_area,
    )
    boundary = spec.boundary
    if boundary.trace is not None:
        boundary = BoundarySpec(boundary.kind, denormalize_field(boundary.trace, record))

    return ObstacleProblemSpec(
        grid=spec.grid.scaled(1.0 / record.space_scale, UnitSystem.PHYSICAL),
        time_grid=spec.time_grid.scaled(1.0 / record.time_scale),
        constants=spec.constants,
        forcing=forcing,
        boundary=boundary,
        initial_u=spec.initial_u * record.u_scale,
        u_scale=spec.u_scale,
        normalization=None,
    )
