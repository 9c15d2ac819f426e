import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from porosim.constants.geometry import UnitSystem
from porosim.constants.solvers import BoundaryKind, ProfileKind, WaveScheme
from porosim.errors import (
    ConfigError,
    ConvergenceError,
    GridError,
    InstabilityError,
    PreconditionError,
)
from porosim.forcing import ForcingSpec
from porosim.geometry import ScalarField, make_grid, make_time_grid
from porosim.oracle import brute_force_lcp, random_lcp_system, reference_heat_system
from porosim.solvers import (
    BoundarySpec,
    DampedWaveSolver,
    HeatStepOperator,
    LcpSystem,
    NormalizationRecord,
    ObstacleProblemSpec,
    ParabolicObstacleSolver,
    PhysicalConstants,
    PsorSettings,
    check_stefan,
    complementarity_residual,
    denormalize,
    inertia_ratio,
    make_profile,
    make_profile_field,
    normalize,
    psor,
    quasi_static_sweep,
    residual,
    small_deformation_measure,
    solve_parabolic,
    step_parabolic,
)

TIGHT = PsorSettings(omega=1.2, max_iters=200_000, tol=1e-13)
IDENTITY_CONSTANTS = PhysicalConstants.from_speed(1.0, 1.0, 2.0)


def normalized_spec(grid, time_grid, forcing, initial=None, trace=None):
    boundary = (
        BoundarySpec()
        if trace is None
        else BoundarySpec(BoundaryKind.PRESCRIBED_TRACE, trace)
    )
    return ObstacleProblemSpec(
        grid=grid,
        time_grid=time_grid,
        constants=IDENTITY_CONSTANTS,
        forcing=forcing,
        boundary=boundary,
        initial_u=np.zeros(grid.shape) if initial is None else initial,
        normalization=NormalizationRecord.identity(),
    )


def stationary_half_space_spec(n_cells: int, n_steps: int) -> ObstacleProblemSpec:
    h = 2.0 / n_cells
    grid = make_grid(1, -1.0 - 0.5 * h, 2.0, n_cells, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(0.0, 0.001, n_steps)
    trace = make_profile_field(ProfileKind.HALF_SPACE, grid, time_grid, "trace", e=[1.0])
    return normalized_spec(
        grid,
        time_grid,
        ForcingSpec.uniform(-1.0),
        initial=make_profile(ProfileKind.HALF_SPACE, grid, e=[1.0]),
        trace=trace,
    )


############# LCP #############
def test_psor_settings_validation():
    with pytest.raises(ValueError):
        PsorSettings(omega=2.0)
    with pytest.raises(ValueError):
        PsorSettings(max_iters=0)
    with pytest.raises(ValueError):
        PsorSettings(tol=0.0)


@settings(max_examples=40, deadline=None)
@given(size=st.integers(min_value=1, max_value=10), seed=st.integers(0, 2**32 - 1))
def test_psor_agrees_with_enumeration(size, seed):
    system = random_lcp_system(size, seed)
    result = psor(system, TIGHT)
    assert np.allclose(result.x, brute_force_lcp(system), atol=1e-10, rtol=0.0)
    assert result.residual < 1e-10


@settings(max_examples=25, deadline=None)
@given(size=st.integers(min_value=2, max_value=9), seed=st.integers(0, 2**32 - 1))
def test_psor_solution_is_independent_of_ordering(size, seed):
    system = random_lcp_system(size, seed)
    order = np.random.default_rng(seed).permutation(size)
    solution = psor(system, TIGHT).x
    permuted = psor(system.permuted(order), TIGHT).x
    assert np.allclose(permuted, solution[order], atol=1e-10)


def test_psor_reports_non_convergence():
    generated = random_lcp_system(8, 3)
    system = LcpSystem(generated.matrix, np.abs(generated.rhs) + 0.1)
    with pytest.raises(ConvergenceError) as error:
        psor(system, PsorSettings(max_iters=1, tol=1e-15))
    assert error.value.iterations == 1
    assert error.value.residual >= 0.0


def test_complementarity_residual_of_known_solution():
    system = LcpSystem(np.array([[2.0, 0.0], [0.0, 1.0]]), np.array([2.0, -1.0]))
    assert complementarity_residual(system, np.array([1.0, 0.0])) == 0.0
    assert complementarity_residual(system, np.array([0.0, 0.0])) == pytest.approx(1.0)


############# ASSEMBLY #############
@pytest.mark.parametrize(
    "grid",
    [
        make_grid(1, 0.0, 1.0, 9, UnitSystem.NORMALIZED),
        make_grid(2, (0.0, 0.0), (1.0, 2.0), (4, 5), UnitSystem.NORMALIZED),
    ],
)
def test_heat_operator_matches_dense_assembly(grid):
    rng = np.random.default_rng(5)
    u_prev = rng.random(grid.shape)
    source = rng.normal(size=grid.shape)
    boundary = rng.random(grid.shape)
    production = HeatStepOperator(grid, 0.01).system(u_prev, source, boundary)
    reference = reference_heat_system(u_prev, source, 0.01, grid.h, boundary)
    assert np.allclose(production.matrix.toarray(), reference.matrix.toarray())
    assert np.allclose(production.rhs, reference.rhs)


def test_step_requires_non_negative_data():
    grid = make_grid(1, 0.0, 1.0, 10, UnitSystem.NORMALIZED)
    u_prev = np.full(grid.shape, -1.0)
    with pytest.raises(PreconditionError):
        step_parabolic(u_prev, np.zeros(grid.shape), 0.01, None, grid)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_step_is_monotone_in_the_forcing(seed):
    grid = make_grid(1, 0.0, 1.0, 20, UnitSystem.NORMALIZED)
    rng = np.random.default_rng(seed)
    u_prev = rng.random(grid.shape) * 0.1
    u_prev[[0, -1]] = 0.0
    low = rng.normal(size=grid.shape) * 5.0
    high = low + rng.random(grid.shape)
    step_low = step_parabolic(u_prev, low, 0.01, None, grid, TIGHT)
    step_high = step_parabolic(u_prev, high, 0.01, None, grid, TIGHT)
    assert np.all(step_low >= 0.0)
    assert np.all(step_high >= step_low - 1e-9)


############# PARABOLIC SOLVER #############
def test_stationary_half_space_stays_close_to_exact():
    spec = stationary_half_space_spec(100, 50)
    u = solve_parabolic(spec)
    x = u.grid.axes()[0]
    exact = 0.5 * np.maximum(x, 0.0) ** 2
    h = u.grid.h[0]
    assert np.max(np.abs(u.values[-1] - exact)) <= 5.0 * h * h
    assert np.min(u.values) >= 0.0


def test_constraint_keeps_membrane_off_the_vesicle():
    grid = make_grid(1, 0.0, 1.0, 20, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(0.0, 0.01, 10)
    spec = normalized_spec(grid, time_grid, ForcingSpec.uniform(-1.0))
    constrained = solve_parabolic(spec)
    free = solve_parabolic(spec, constrained=False)
    assert np.all(constrained.values == 0.0)
    assert free.values[-1, 10] < 0.0, "Without the constraint the membrane goes negative."


def test_solver_records_steps_and_reports_failures():
    grid = make_grid(1, 0.0, 1.0, 20, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(0.0, 0.01, 5)
    spec = normalized_spec(grid, time_grid, ForcingSpec.uniform(1.0))
    solver = ParabolicObstacleSolver(spec)
    u = solver.solve()
    assert [report.time_index for report in solver.reports] == [1, 2, 3, 4, 5]
    assert all(report.iterations > 0 for report in solver.reports)
    assert np.all(np.diff(u.values, axis=0) >= -1e-9)

    failing = ParabolicObstacleSolver(spec, PsorSettings(max_iters=1, tol=1e-15))
    with pytest.raises(ConvergenceError) as error:
        failing.solve()
    assert error.value.time_index == 1


def test_residual_vanishes_for_quadratic_data():
    grid = make_grid(1, -0.995, 2.0, 100, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(0.0, 0.01, 4)
    u = make_profile_field(ProfileKind.POLYNOMIAL, grid, time_grid, m=0.0, M=[[0.5]])
    f = ScalarField.constant(grid, time_grid, 1.0, "f_statement")
    assert np.max(residual(u, f).values) < 1e-9
    with pytest.raises(GridError):
        residual(u, ScalarField.constant(grid, make_time_grid(0.0, 0.02, 4), 1.0))


############# NORMALIZATION #############
def test_unit_constants_give_the_identity_record():
    record = NormalizationRecord.from_constants(IDENTITY_CONSTANTS)
    assert record.as_dict() == pytest.approx(NormalizationRecord.identity().as_dict())
    with pytest.raises(ConfigError):
        NormalizationRecord.from_constants(PhysicalConstants.from_speed(1.0, 1.0, math.inf))


def test_normalize_and_back():
    constants = PhysicalConstants.from_speed(2.0, 3.0, 0.5)
    grid = make_grid(1, 0.0, 1.5, 30)
    time_grid = make_time_grid(0.0, 0.01, 20)
    spec = ObstacleProblemSpec(
        grid=grid,
        time_grid=time_grid,
        constants=constants,
        forcing=ForcingSpec.uniform(4.0),
        boundary=BoundarySpec(),
        initial_u=np.zeros(grid.shape),
        u_scale=2.0,
    )
    normalized = normalize(spec)
    record = normalized.normalization
    assert record.time_scale == pytest.approx(0.25)
    assert record.space_scale == pytest.approx(0.75)
    assert record.f_scale == pytest.approx(4.0 * 2.0 * 2.0 / 0.25)
    assert normalized.grid.unit_system == UnitSystem.NORMALIZED
    assert normalized.grid.extent == pytest.approx((2.0,))

    restored = denormalize(normalized)
    assert not restored.is_normalized
    assert restored.grid.same_nodes(grid)
    assert restored.time_grid.same_times(time_grid)


def test_physical_solve_matches_normalized_solve():
    constants = PhysicalConstants.from_speed(2.0, 3.0, 0.5)
    grid = make_grid(1, 0.0, 1.5, 30)
    time_grid = make_time_grid(0.0, 0.005, 20)
    spec = ObstacleProblemSpec(
        grid=grid,
        time_grid=time_grid,
        constants=constants,
        forcing=ForcingSpec.uniform(40.0),
        boundary=BoundarySpec(),
        initial_u=np.zeros(grid.shape),
    )
    physical = solve_parabolic(spec)
    normalized = solve_parabolic(normalize(spec))
    assert physical.grid.same_nodes(grid)
    assert np.allclose(physical.values, normalized.values, atol=1e-9)


def test_spec_validation():
    grid = make_grid(1, 0.0, 1.0, 10, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(0.0, 0.1, 3)
    with pytest.raises(ConfigError):
        normalized_spec(grid, time_grid, ForcingSpec.uniform(1.0), initial=-np.ones(grid.shape))
    with pytest.raises(ConfigError):
        BoundarySpec(BoundaryKind.PRESCRIBED_TRACE)
    other = make_grid(1, 0.0, 1.0, 20, UnitSystem.NORMALIZED)
    trace = ScalarField.constant(other, time_grid, 0.0)
    with pytest.raises(GridError):
        normalized_spec(grid, time_grid, ForcingSpec.uniform(1.0), trace=trace)
    with pytest.raises(ConfigError):
        PhysicalConstants.from_speed(1.0, 1.0, -1.0)


############# DIAGNOSTICS #############
def test_stefan_check():
    grid = make_grid(1, 0.0, 1.0, 4)
    time_grid = make_time_grid(0.0, 0.5, 2)
    rising = ScalarField(grid, time_grid, np.array([[0.0] * 5, [1.0] * 5, [2.0] * 5]))
    assert check_stefan(rising).monotone
    receding = rising.with_values(rising.values[::-1])
    result = check_stefan(receding)
    assert not result.monotone
    assert result.violation == pytest.approx(-1.0)


def test_small_deformation_and_inertia():
    grid = make_grid(1, 0.0, 1.0, 10)
    time_grid = make_time_grid(0.0, 0.1, 10)
    tilted = ScalarField.from_function(grid, time_grid, lambda x, t: 0.1 * x[..., 0] + 0 * t)
    assert small_deformation_measure(tilted) == pytest.approx(0.01)

    accelerating = ScalarField.from_function(grid, time_grid, lambda x, t: t**2 + 0 * x[..., 0])
    assert inertia_ratio(accelerating, IDENTITY_CONSTANTS) == pytest.approx(1.0 / 0.9)
    with pytest.raises(ValueError):
        inertia_ratio(
            ScalarField.constant(grid, make_time_grid(0.0, 0.1, 1), 0.0), IDENTITY_CONSTANTS
        )


############# DAMPED WAVE #############
def test_explicit_wave_beyond_cfl_raises():
    grid = make_grid(1, 0.0, 2.0, 50, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(0.0, 0.1, 200)
    spec = normalized_spec(grid, time_grid, ForcingSpec.uniform(1.0))
    with pytest.raises(InstabilityError) as error:
        DampedWaveSolver(spec, WaveScheme.EXPLICIT).solve()
    assert error.value.cfl_bound == pytest.approx(0.04)
    implicit = DampedWaveSolver(spec, WaveScheme.IMPLICIT).solve()
    assert np.all(np.isfinite(implicit.values))


def test_quasi_static_sweep_needs_physical_units():
    grid = make_grid(1, 0.0, 1.0, 10, UnitSystem.NORMALIZED)
    spec = normalized_spec(grid, make_time_grid(0.0, 0.1, 3), ForcingSpec.uniform(1.0))
    with pytest.raises(PreconditionError):
        quasi_static_sweep(spec, [1.0, 0.5])
