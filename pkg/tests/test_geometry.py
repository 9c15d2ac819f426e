from pathlib import Path

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from porosim.constants.geometry import UnitSystem
from porosim.errors import CylinderError, FieldFormatError, GridError, ResamplingError
from porosim.geometry import (
    ParabolicCylinder,
    ScalarField,
    cylinder_nodes,
    make_grid,
    make_time_grid,
    read_field_csv,
    sup_on_cylinder,
    write_field_csv,
)


@pytest.fixture
def grid_1d():
    return make_grid(1, -1.0, 2.0, 100)


@pytest.fixture
def time_grid():
    return make_time_grid(0.0, 0.01, 100)


def test_grid_spacing_and_axes(grid_1d):
    assert grid_1d.h == pytest.approx((0.02,)), "Spacing is extent / n_cells."
    assert grid_1d.shape == (101,)
    axis = grid_1d.axes()[0]
    assert axis[0] == -1.0 and axis[-1] == pytest.approx(1.0)
    assert grid_1d.interior_shape == (99,)


def test_grid_2d_positions_use_ij_indexing():
    grid = make_grid(2, (0.0, 10.0), (1.0, 2.0), (4, 8))
    positions = grid.positions()
    assert positions.shape == (5, 9, 2)
    assert positions[1, 0] == pytest.approx((0.25, 10.0))
    assert positions[0, 1] == pytest.approx((0.0, 10.25))


@pytest.mark.parametrize(
    "dim, extent, n_cells",
    [(3, 1.0, 4), (1, 0.0, 4), (1, -1.0, 4), (1, 1.0, 1)],
)
def test_invalid_grids_are_rejected(dim, extent, n_cells):
    with pytest.raises(GridError):
        make_grid(dim, 0.0, extent, n_cells)


def test_time_grid(time_grid):
    assert time_grid.t_end == pytest.approx(1.0)
    assert time_grid.index_of(0.5) == 50
    with pytest.raises(GridError):
        time_grid.index_of(1.5)
    with pytest.raises(GridError):
        make_time_grid(0.0, 0.0, 10)


def test_coord_to_index_outside_raises(grid_1d):
    assert grid_1d.coord_to_index([0.0]) == (50,)
    with pytest.raises(GridError):
        grid_1d.coord_to_index([1.5])


def test_field_shape_is_checked_and_values_frozen(grid_1d, time_grid):
    with pytest.raises(GridError):
        ScalarField(grid_1d, time_grid, np.zeros((3, 101)))
    field = ScalarField.constant(grid_1d, time_grid, 1.0)
    assert field.values.shape == (101, 101)
    with pytest.raises(ValueError):
        field.values[0, 0] = 2.0


def test_resample_is_exact_for_linear_fields(grid_1d, time_grid):
    field = ScalarField.from_function(
        grid_1d, time_grid, lambda x, t: 2.0 * x[..., 0] + 3.0 * t
    )
    coarse = make_grid(1, -0.5, 1.0, 7)
    window = make_time_grid(0.2, 0.05, 10)
    resampled = field.resample(coarse, window)
    expected = 2.0 * coarse.axes()[0][np.newaxis] + 3.0 * window.times[:, np.newaxis]
    assert np.allclose(resampled.values, expected, atol=1e-12)


def test_resample_refuses_extrapolation(grid_1d, time_grid):
    field = ScalarField.constant(grid_1d, time_grid, 1.0)
    with pytest.raises(ResamplingError):
        field.resample(make_grid(1, -2.0, 3.0, 10), time_grid)
    with pytest.raises(ResamplingError):
        field.resample(grid_1d, make_time_grid(0.5, 0.1, 10))


def test_cylinder_validation(grid_1d, time_grid):
    field = ScalarField.constant(grid_1d, time_grid, 1.0)
    with pytest.raises(CylinderError):
        ParabolicCylinder.at((0.0, 1.0), 0.0)
    with pytest.raises(CylinderError, match="axis 0"):
        cylinder_nodes(field, ParabolicCylinder.at((0.9, 1.0), 0.2))
    with pytest.raises(CylinderError):
        cylinder_nodes(field, ParabolicCylinder.at((0.0, 0.1), 0.5))
    # rho^2 below dt leaves no time sample in the open window.
    with pytest.raises(CylinderError, match="No time sample"):
        cylinder_nodes(field, ParabolicCylinder.at((0.0, 1.0), 0.05))


def test_cylinder_nodes_are_strictly_inside(grid_1d, time_grid):
    field = ScalarField.constant(grid_1d, time_grid, 1.0)
    time_index, space_index = cylinder_nodes(field, ParabolicCylinder.at((0.0, 1.0), 0.2))
    x = grid_1d.axes()[0][space_index]
    t = time_grid.times[time_index]
    assert np.all(np.abs(x) < 0.2)
    assert np.all((t > 1.0 - 0.04) & (t < 1.0))


def test_sup_of_parabola_on_cylinder(grid_1d, time_grid):
    u = ScalarField.from_function(grid_1d, time_grid, lambda x, t: x[..., 0] ** 2 + 0 * t)
    rho = 0.3
    cylinder = ParabolicCylinder.at((0.0, 1.0), rho)
    at_nodes = sup_on_cylinder(u, cylinder)
    refined = sup_on_cylinder(u, cylinder, refine=8)
    assert at_nodes <= refined <= rho**2
    assert refined >= (rho - 0.02 / 8) ** 2 - 1e-12


@settings(max_examples=30, deadline=None)
@given(
    small=st.floats(min_value=0.15, max_value=0.5),
    factor=st.floats(min_value=1.0, max_value=1.8),
    seed=st.integers(min_value=0, max_value=2**16),
)
def test_sup_is_monotone_in_radius(small, factor, seed):
    grid = make_grid(1, -1.0, 2.0, 50)
    time_grid = make_time_grid(0.0, 0.01, 100)
    values = np.random.default_rng(seed).random((101, 51))
    u = ScalarField(grid, time_grid, values)
    inner = sup_on_cylinder(u, ParabolicCylinder.at((0.0, 1.0), small))
    outer = sup_on_cylinder(u, ParabolicCylinder.at((0.0, 1.0), small * factor))
    assert inner <= outer


def test_field_csv_preserves_samples(tmp_path: Path):
    grid = make_grid(2, (0.0, -1.0), (1.0, 2.0), (3, 4), UnitSystem.NORMALIZED)
    time_grid = make_time_grid(0.5, 0.25, 2)
    values = np.random.default_rng(1).normal(size=(3, 4, 5))
    field = ScalarField(grid, time_grid, values, "u")
    path = write_field_csv(field, tmp_path / "nested" / "u.csv")

    loaded = read_field_csv(path, "u", UnitSystem.NORMALIZED)
    assert path.read_text().splitlines()[0] == "x,y,t,value"
    assert loaded.grid.same_nodes(grid)
    assert loaded.time_grid.same_times(time_grid)
    assert np.array_equal(loaded.values, values), "%.17g must round-trip exactly."


def test_field_csv_errors_carry_line_numbers(tmp_path: Path):
    path = tmp_path / "broken.csv"
    path.write_text("x,t,value\n0,0,1\n1,0,abc\n")
    with pytest.raises(FieldFormatError) as error:
        read_field_csv(path)
    assert error.value.line_number == 3

    path.write_text("x,time,value\n0,0,1\n")
    with pytest.raises(FieldFormatError) as error:
        read_field_csv(path)
    assert error.value.line_number == 1


def test_field_csv_requires_complete_grid(tmp_path: Path):
    path = tmp_path / "holes.csv"
    path.write_text("x,t,value\n0,0,1\n0.5,0,1\n1,0,1\n0,1,1\n1,1,1\n")
    with pytest.raises(FieldFormatError, match="complete grid"):
        read_field_csv(path)
