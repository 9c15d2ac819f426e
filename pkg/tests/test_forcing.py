import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from porosim.constants.forcing import MembraneRegion
from porosim.forcing import (
    ChargeScaleParams,
    ForcingSpec,
    WaveForcingParams,
    b_field,
    check_admissible,
    e_field,
    forcing_density,
    lorentz_force,
    region_reactance,
    scale_report,
    to_statement_convention,
)
from porosim.geometry import ScalarField, make_grid, make_time_grid


@pytest.fixture
def wave() -> WaveForcingParams:
    return WaveForcingParams(
        B_hat=(0.0, -10.0, 0.0), k_vec=(1.0, 0.0, 0.0), v=0.1, q=-1.0, gamma=0.5
    )


@settings(max_examples=50, deadline=None)
@given(
    x=st.floats(min_value=-10.0, max_value=10.0),
    t=st.floats(min_value=0.0, max_value=10.0),
    k=st.floats(min_value=0.5, max_value=5.0),
)
def test_b_field_is_periodic_and_travels(x, t, k):
    p = WaveForcingParams(B_hat=(0.0, 2.0, 1.0), k_vec=(k, 0.0, 0.0), v=0.3)
    here = b_field(np.array([x]), t, p)
    shifted = b_field(np.array([x + 2.0 * math.pi / k]), t, p)
    travelled = b_field(np.array([x + p.v * t]), t, p)
    assert np.allclose(here, shifted, atol=1e-9)
    assert np.allclose(travelled, b_field(np.array([x]), 0.0, p), atol=1e-9)


def test_induced_field_is_orthogonal_to_the_velocity(wave):
    x = np.linspace(0.0, 3.0, 7)[:, np.newaxis]
    e = e_field(x, 0.4, wave)
    assert e.shape == (7, 3)
    assert np.allclose(e @ wave.velocity, 0.0)


def test_lorentz_force_of_the_travelling_scenario(wave):
    x = np.linspace(0.0, 2.0, 11)[:, np.newaxis]
    t = 1.5
    force = lorentz_force(wave, x, t)
    assert np.allclose(force[:, 2], np.cos(x[:, 0] - 0.1 * t))
    assert np.allclose(force[:, 0], -0.05), "Friction acts against the propagation."


def test_wave_params_validation():
    with pytest.raises(ValueError):
        WaveForcingParams(B_hat=(0.0, 1.0, 0.0), k_vec=(0.0, 0.0, 0.0), v=1.0)
    with pytest.raises(ValueError):
        WaveForcingParams(B_hat=(0.0, 1.0, 0.0), k_vec=(1.0, 0.0, 0.0), v=-1.0)
    with pytest.raises(ValueError):
        WaveForcingParams(B_hat=(0.0, 1.0, 0.0, 1.0), k_vec=(1.0,), v=1.0)


def test_forcing_density_projects_on_the_normal(wave):
    grid = make_grid(1, 0.5, 2.0, 20)
    time_grid = make_time_grid(0.0, 0.1, 10)
    f = forcing_density(ForcingSpec.analytic(wave, reference_area=2.0), grid, time_grid)
    x = grid.axes()[0][np.newaxis]
    t = time_grid.times[:, np.newaxis]
    assert f.name == "f"
    assert np.allclose(f.values, 0.5 * np.cos(x - 0.1 * t))


def test_switch_off_time_zeroes_later_slices():
    grid = make_grid(1, 0.0, 1.0, 4)
    time_grid = make_time_grid(0.0, 0.5, 4)
    f = forcing_density(ForcingSpec.uniform(3.0, switch_off_time=1.0), grid, time_grid)
    assert np.all(f.values[:2] == 3.0)
    assert np.all(f.values[2:] == 0.0)


def test_tabulated_forcing_is_resampled():
    grid = make_grid(1, 0.0, 1.0, 10)
    time_grid = make_time_grid(0.0, 0.1, 10)
    table = ScalarField.from_function(grid, time_grid, lambda x, t: x[..., 0] - t)
    target = make_grid(1, 0.25, 0.5, 5)
    f = forcing_density(ForcingSpec.tabulated(table), target, time_grid)
    assert np.allclose(f.values, target.axes()[0][np.newaxis] - time_grid.times[:, np.newaxis])


def test_forcing_spec_validation(wave):
    with pytest.raises(ValueError):
        ForcingSpec.uniform(1.0, normal_dir=(0.0, 0.0, 0.0))
    with pytest.raises(ValueError):
        ForcingSpec.uniform(1.0, reference_area=0.0)
    with pytest.raises(ValueError, match="exactly its own data block"):
        ForcingSpec.analytic(wave, value=1.0)


def test_statement_convention_negates():
    grid = make_grid(1, 0.0, 1.0, 4)
    time_grid = make_time_grid(0.0, 0.5, 2)
    f = forcing_density(ForcingSpec.uniform(-1.0), grid, time_grid)
    statement = to_statement_convention(f)
    assert np.all(statement.values == 1.0)
    assert statement.name == "f_statement"


def test_admissibility_of_positive_and_negative_data():
    grid = make_grid(1, 0.0, 1.0, 6)
    time_grid = make_time_grid(0.0, 0.1, 4)
    positive = ScalarField.from_function(
        grid, time_grid, lambda x, t: 2.0 + np.cos(x[..., 0]) + 0 * t
    )
    result = check_admissible(positive, 0.5)
    assert result.ok and result.exhaustive
    assert result.delta0 == pytest.approx(2.0 + math.cos(1.0))
    assert 0.0 < result.holder_const < 2.0

    negative = positive.with_values(-positive.values)
    assert not check_admissible(negative, 0.5).ok
    with pytest.raises(ValueError):
        check_admissible(positive, 1.0)


def test_admissibility_sampling_is_seeded():
    grid = make_grid(2, (0.0, 0.0), (1.0, 1.0), (20, 20))
    time_grid = make_time_grid(0.0, 0.1, 10)
    values = 1.0 + np.random.default_rng(3).random((11, 21, 21))
    f = ScalarField(grid, time_grid, values)
    first = check_admissible(f, 0.5, max_pairs=500, seed=7)
    second = check_admissible(f, 0.5, max_pairs=500, seed=7)
    assert not first.exhaustive
    assert first.holder_const == second.holder_const
    assert first.n_pairs > 500, "Grid neighbour pairs are always included."


def test_region_reactance():
    omega, capacitance = 2.0 * math.pi * 50.0, 1e-6
    assert region_reactance(MembraneRegion.D0, omega, capacitance) == 0.0
    assert region_reactance(MembraneRegion.D2, omega, capacitance) == 0.0
    assert region_reactance(MembraneRegion.D1, omega, capacitance) == pytest.approx(
        1.0 / (omega * capacitance)
    )
    with pytest.raises(ValueError):
        region_reactance(MembraneRegion.D3, omega, capacitance)
    with pytest.raises(ValueError):
        region_reactance(MembraneRegion.D1, 0.0, capacitance)


def test_scale_report_defaults():
    report = scale_report(ChargeScaleParams())
    assert report.carriers == pytest.approx(1e9)
    assert report.per_molecule_force == pytest.approx(1e-11)
    assert report.total_force == pytest.approx(1e-2)
    assert report.gravity_force == pytest.approx(9.8e-21)
    assert set(report.as_dict()) == {
        "carriers",
        "per_molecule_force",
        "total_force",
        "gravity_force",
    }
    with pytest.raises(ValueError):
        ChargeScaleParams(dimple_mass=0.0)
