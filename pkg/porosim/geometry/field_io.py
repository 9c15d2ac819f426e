"""
Field CSV interchange format.

Header `x[,y],t,value`, one row per (node, time) sample, time-major, nodes in
C order of the grid axes, every float written with `%.17g`.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-08-04
"""

# Python Libraries
from __future__ import annotations
import csv
import logging
from pathlib import Path

import numpy as np

# Local Libraries
from porosim.constants.geometry import UnitSystem
from porosim.constants.geometry.geometry_constants import (
    FIELD_CSV_FLOAT_FORMAT,
    FIELD_CSV_SPACE_COLUMNS_DICT,
    FIELD_CSV_VALUE_COLUMNS,
)
from porosim.errors import FieldFormatError, GridError
from porosim.geometry.field import ScalarField
from porosim.geometry.grid import Grid, TimeGrid

logger: logging.Logger = logging.getLogger(__name__)


def field_header(dim: int) -> list[str]:
    return [*FIELD_CSV_SPACE_COLUMNS_DICT[dim], *FIELD_CSV_VALUE_COLUMNS]


def field_rows(field: ScalarField) -> np.ndarray:
    """
    Samples of a field as a (samples, dim + 2) array in file order.
    """
    grid = field.grid
    positions = grid.positions().reshape(-1, grid.dim)
    n_nodes = positions.shape[0]
    times = field.times
    return np.column_stack(
        [
            np.tile(positions, (times.size, 1)),
            np.repeat(times, n_nodes),
            field.values.reshape(-1),
        ]
    )


def write_field_csv(field: ScalarField, path: str | Path) -> Path:
    """
    Writes a field to CSV.

    Args:
        field (ScalarField):
            Field to write.
        path (str | Path):
            Target file, parent directories are created.

    Returns:
        Path:
            The written file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        path,
        field_rows(field),
        fmt=FIELD_CSV_FLOAT_FORMAT,
        delimiter=",",
        header=",".join(field_header(field.grid.dim)),
        comments="",
    )
    logger.info("Wrote field '%s' (%d samples) to %s", field.name, field.sample_count, path)
    return path


def _uniform_axis(values: np.ndarray, label: str) -> tuple[float, float, int]:
    nodes = np.unique(values)
    if nodes.size < 2:
        raise FieldFormatError(f"Column '{label}' holds a single coordinate.")
    steps = np.diff(nodes)
    spacing = (nodes[-1] - nodes[0]) / (nodes.size - 1)
    if np.max(np.abs(steps - spacing)) > 1e-6 * spacing:
        raise FieldFormatError(f"Column '{label}' is not uniformly spaced.")
    return float(nodes[0]), float(spacing), nodes.size - 1


def read_field_csv(
    path: str | Path,
    name: str = "u",
    unit_system: UnitSystem = UnitSystem.PHYSICAL,
) -> ScalarField:
    """
    Reads a field CSV written by `write_field_csv`.

    The grid and time grid are reconstructed from the distinct coordinates.

    Args:
        path (str | Path):
            CSV file.
        name (str):
            Name given to the field.
        unit_system (UnitSystem):
            Unit system of the coordinates.

    Returns:
        ScalarField:
            The field.

    Raises:
        FieldFormatError:
            With the offending line number for malformed rows, or without one
            when the samples do not form a complete uniform grid.
    """
    path = Path(path)
    with path.open(newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise FieldFormatError("Empty file.", 1)
        header = [column.strip() for column in header]
        dim = len(header) - len(FIELD_CSV_VALUE_COLUMNS)
        if dim not in FIELD_CSV_SPACE_COLUMNS_DICT or header != field_header(dim):
            raise FieldFormatError(
                f"Unexpected header {','.join(header)}; expected x[,y],t,value.", 1
            )

        rows = []
        for line_number, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise FieldFormatError(
                    f"Expected {len(header)} columns, found {len(row)}.", line_number
                )
            try:
                parsed = [float(cell) for cell in row]
            except ValueError as error:
                raise FieldFormatError(str(error), line_number) from error
            if not all(np.isfinite(parsed)):
                raise FieldFormatError("Non-finite entry.", line_number)
            rows.append(parsed)

    if not rows:
        raise FieldFormatError("No samples.", 2)
    data = np.asarray(rows)

    axes = [_uniform_axis(data[:, axis], header[axis]) for axis in range(dim)]
    t0, dt, n_steps = _uniform_axis(data[:, dim], "t")
    try:
        grid = Grid(
            dim=dim,
            origin=tuple(origin for origin, _, _ in axes),
            extent=tuple(spacing * n for _, spacing, n in axes),
            n_cells=tuple(n for _, _, n in axes),
            unit_system=unit_system,
        )
        time_grid = TimeGrid(t0=t0, dt=dt, n_steps=n_steps)
    except GridError as error:
        raise FieldFormatError(str(error)) from error

    expected = (n_steps + 1) * grid.node_count
    if data.shape[0] != expected:
        raise FieldFormatError(
            f"Found {data.shape[0]} samples, a complete grid needs {expected}."
        )

    values = np.full((n_steps + 1, *grid.shape), np.nan)
    time_index = np.rint((data[:, dim] - t0) / dt).astype(int)
    space_index = tuple(
        np.rint((data[:, axis] - axes[axis][0]) / axes[axis][1]).astype(int)
        for axis in range(dim)
    )
    values[(time_index, *space_index)] = data[:, dim + 1]
    if np.isnan(values).any():
        raise FieldFormatError("Duplicate samples leave grid nodes without a value.")

    logger.info("Read field '%s' from %s (%d samples)", name, path, data.shape[0])
    return ScalarField(grid, time_grid, values, name)
