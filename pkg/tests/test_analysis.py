import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from porosim.analysis import (
    BlowupFit,
    FreeBoundarySet,
    HalfSpaceWeissEvaluator,
    WeissQuadrature,
    classify_point,
    compute_A_n,
    default_tau_sequence,
    derivative_bounds,
    extract_free_boundary,
    fit_blowup,
    fit_circle,
    free_boundary_measure,
    heat_kernel,
    label_from_ratio,
    max_blowup_scale,
    nondegeneracy_sweep,
    quadratic_growth_sweep,
    regularity_report,
    rescale_blowup,
    richardson_extrapolate,
    singular_structure,
    weiss_energy,
    weiss_sweep,
)
from porosim.analysis.classification import matrix_rank
from porosim.cli import load_config, to_problem_spec
from porosim.constants.analysis import BlowupKind, PointLabel
from porosim.constants.geometry import UnitSystem
from porosim.errors import (
    BlowupWindowError,
    CylinderError,
    PreconditionError,
)
from porosim.geometry import ScalarField, make_grid, make_time_grid
from porosim.oracle import exact_half_space, exact_polynomial, exact_radial_stationary

WEISS_TAU_VALUES = [0.5, 0.25, 0.125]


@pytest.fixture
def half_space():
    """1/2 (x_+)^2 on [-1, 1] x [0, 1], dt below the smallest squared radius."""
    grid = make_grid(1, -1.0, 2.0, 200, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(0.0, 0.005, 200)
    return exact_half_space([1.0]).sample(grid, time_grid)


@pytest.fixture
def weiss_support():
    grid = make_grid(1, -1.0, 2.0, 400, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(-1.0, 0.01, 100)
    return grid, time_grid


############# FREE BOUNDARY #############
def test_free_boundary_of_shifted_half_space():
    grid = make_grid(1, -1.0, 2.0, 200)
    time_grid = make_time_grid(0.0, 0.1, 5)
    u = exact_half_space([1.0], center=[0.303]).sample(grid, time_grid)
    fb = extract_free_boundary(u)

    assert fb.count == 6, "One interface point per slice."
    for points in fb.points:
        assert points.shape == (1, 1)
        assert points[0, 0] == pytest.approx(0.303, abs=1e-9)
    assert all(label == PointLabel.UNRESOLVED for labels in fb.labels for label in labels)
    assert fb.point(2, 0) == pytest.approx((0.303, 0.2))
    assert fb.space_time_points().shape == (6, 2)


def test_free_boundary_measure_counts_nearby_nodes():
    grid = make_grid(1, -1.0, 2.0, 200)
    time_grid = make_time_grid(0.0, 0.1, 5)
    u = exact_half_space([1.0], center=[0.303]).sample(grid, time_grid)
    fb = extract_free_boundary(u)
    # Nodes 0.30 and 0.31 in each of the six slices.
    assert free_boundary_measure(u, fb) == pytest.approx(12 * 0.01 * 0.1)


def test_free_boundary_of_radial_solution_is_a_circle():
    grid = make_grid(2, (-1.0, -1.0), (2.0, 2.0), (80, 80))
    time_grid = make_time_grid(0.0, 0.1, 1)
    u = exact_radial_stationary(0.4).sample(grid, time_grid)
    fb = extract_free_boundary(u)
    center, radius = fit_circle(fb.points[0])
    assert len(fb.points[0]) > 20
    assert np.allclose(center, 0.0, atol=1e-2)
    assert radius == pytest.approx(0.4, abs=1e-2)


def test_constant_fields_have_no_free_boundary():
    grid = make_grid(1, 0.0, 1.0, 10)
    time_grid = make_time_grid(0.0, 0.1, 3)
    for value in (0.0, 1.0):
        fb = extract_free_boundary(ScalarField.constant(grid, time_grid, value))
        assert fb.is_empty
        assert fb.indices() == []


def test_with_labels_replaces_only_given_points(half_space):
    fb = extract_free_boundary(half_space)
    labelled = fb.with_labels({(0, 0): PointLabel.REGULAR})
    assert labelled.labels[0][0] == PointLabel.REGULAR
    assert labelled.labels[1][0] == PointLabel.UNRESOLVED
    assert fb.labels[0][0] == PointLabel.UNRESOLVED


def test_fit_circle():
    theta = np.linspace(0.0, 2.0 * math.pi, 13)[:-1]
    points = np.column_stack([1.0 + 3.0 * np.cos(theta), -2.0 + 3.0 * np.sin(theta)])
    center, radius = fit_circle(points)
    assert np.allclose(center, (1.0, -2.0))
    assert radius == pytest.approx(3.0)
    with pytest.raises(ValueError):
        fit_circle(points[:2])


############# REGULARITY #############
def test_quadratic_growth_of_half_space(half_space):
    report = quadratic_growth_sweep(half_space, (0.0, 1.0), [0.1, 0.4, 0.2, 0.4])
    assert report.rho_values == [0.4, 0.2, 0.1], "Radii are sorted and deduplicated."
    assert report.fitted_exponent == pytest.approx(2.0, abs=0.05)
    assert 0.45 <= report.fitted_c_lower <= report.fitted_C_upper <= 0.5


def test_radii_without_a_time_sample_are_skipped(half_space):
    # rho = 0.05 gives rho^2 < dt, so its cylinder holds no time sample.
    report = quadratic_growth_sweep(half_space, (0.0, 1.0), [0.4, 0.2, 0.05])
    assert report.rho_values == [0.4, 0.2]
    assert report.skipped_rho == [0.05]
    assert report.fitted_exponent == pytest.approx(2.0, abs=0.05)
    assert report.as_dict()["skipped_rho"] == 1.0
    with pytest.raises(CylinderError):
        quadratic_growth_sweep(half_space, (0.0, 1.0), [0.05, 0.06])


def test_nondegeneracy_needs_a_positive_neighbour(half_space):
    report = nondegeneracy_sweep(half_space, (0.0, 1.0), [0.4, 0.2])
    assert report.fitted_c_lower > 0.4
    with pytest.raises(PreconditionError):
        nondegeneracy_sweep(half_space, (-0.5, 1.0), [0.2])


def test_quadratic_growth_needs_a_free_boundary_point(half_space):
    with pytest.raises(PreconditionError):
        quadratic_growth_sweep(half_space, (0.5, 1.0), [0.2])
    with pytest.raises(PreconditionError):
        quadratic_growth_sweep(half_space, (-0.5, 1.0), [0.2])


def test_derivative_bounds_of_exact_profiles(half_space):
    assert derivative_bounds(half_space, (0.5, 1.0), 0.2) == pytest.approx(1.0, rel=1e-6)
    with pytest.raises(CylinderError):
        derivative_bounds(half_space, (-0.5, 1.0), 0.2)

    grid = make_grid(1, -1.0, 2.0, 100)
    time_grid = make_time_grid(-2.0, 0.01, 150)
    u = exact_polynomial(-0.5, [[0.25]]).sample(grid, time_grid)
    # |u_xx| + |u_t| = 0.5 + 0.5
    assert derivative_bounds(u, (0.0, -1.0), 0.3) == pytest.approx(1.0, rel=1e-6)


def test_regularity_report_carries_the_derivative_bound(half_space):
    report = regularity_report(half_space, (0.0, 1.0), [0.4, 0.2, 0.1])
    assert report.M_bound == pytest.approx(1.0, rel=1e-6)
    assert report.skipped_rho == []
    assert set(report.as_dict()) == {"exponent", "c_lower", "C_upper", "M_bound", "skipped_rho"}


############# BLOW-UPS #############
def test_max_blowup_scale(half_space):
    assert max_blowup_scale(half_space, (0.0, 1.0), 1.0) == pytest.approx(1.0)
    assert max_blowup_scale(half_space, (0.0, 1.0), 4.0) == pytest.approx(2.0)
    assert max_blowup_scale(half_space, (0.5, 0.25), 1.0) == pytest.approx(0.5)


def test_rescale_blowup_errors(half_space):
    with pytest.raises(PreconditionError):
        rescale_blowup(half_space, (0.0, 1.0), 0.5, 0.0)
    with pytest.raises(PreconditionError):
        rescale_blowup(half_space, (0.0, 1.0), -0.5, 1.0)
    with pytest.raises(BlowupWindowError) as error:
        rescale_blowup(half_space, (0.0, 1.0), 2.0, 1.0)
    assert error.value.max_lambda == pytest.approx(1.0)


def test_half_space_blowup_is_recognised(half_space):
    u_lambda = rescale_blowup(half_space, (0.0, 1.0), 0.5, 1.0)
    assert u_lambda.name == "u_lambda"
    assert u_lambda.time_grid.t0 == -1.0
    fit = fit_blowup(u_lambda)
    assert fit.kind == BlowupKind.HALF_SPACE
    assert np.array_equal(fit.e, [1.0])
    assert fit.half_space_residual < 1e-6


def test_rotated_half_space_blowup_in_2d():
    grid = make_grid(2, (-1.0, -1.0), (2.0, 2.0), (40, 40))
    time_grid = make_time_grid(0.0, 0.05, 20)
    u = exact_half_space([0.6, 0.8]).sample(grid, time_grid)
    fit = fit_blowup(rescale_blowup(u, (0.0, 0.0, 1.0), 0.5, 1.0))
    assert fit.kind == BlowupKind.HALF_SPACE
    assert np.allclose(fit.e, (0.6, 0.8), atol=2e-2)


def test_polynomial_blowup_is_recognised(half_space):
    u = exact_polynomial(0.0, [[0.5]]).sample(half_space.grid, half_space.time_grid)
    fit = fit_blowup(rescale_blowup(u, (0.0, 1.0), 0.5, 1.0))
    assert fit.kind == BlowupKind.POLYNOMIAL
    assert fit.M == pytest.approx(np.array([[0.5]]), abs=1e-9)
    assert fit.m == pytest.approx(0.0, abs=1e-9)
    assert fit.psd
    assert fit.polynomial_residual < fit.half_space_residual


@pytest.mark.parametrize(
    "exact, t0, z_star",
    [
        (exact_half_space([1.0]), 0.0, (0.0, 1.0)),
        (exact_polynomial(0.0, [[0.5]]), 0.0, (0.0, 1.0)),
        (exact_polynomial(-1.0, [[0.0]]), -1.0, (0.0, 0.0)),
        (exact_polynomial(-0.5, [[0.25]]), -1.0, (0.0, 0.0)),
    ],
    ids=["half_space", "parabola", "linear_in_t", "mixed"],
)
def test_homogeneous_profiles_are_blowup_invariant(exact, t0, z_star):
    grid = make_grid(1, -1.0, 2.0, 200, UnitSystem.NORMALIZED)
    u = exact.sample(grid, make_time_grid(t0, 0.01, 100))
    reference = rescale_blowup(u, z_star, 1.0, 1.0).values
    for lam in (0.5, 0.25):
        rescaled = rescale_blowup(u, z_star, lam, 1.0).values
        assert np.max(np.abs(rescaled - reference)) < 1e-8


@pytest.mark.parametrize("m, M", [(-1.0, 0.0), (-0.5, 0.25)])
def test_polynomial_fit_recovers_m(m, M):
    grid = make_grid(1, -1.0, 2.0, 200, UnitSystem.NORMALIZED)
    u = exact_polynomial(m, [[M]]).sample(grid, make_time_grid(-1.0, 0.01, 100))
    fit = fit_blowup(rescale_blowup(u, (0.0, 0.0), 0.5, 1.0))
    assert fit.kind == BlowupKind.POLYNOMIAL
    assert fit.m == pytest.approx(m, abs=1e-6)
    assert fit.M == pytest.approx(np.array([[M]]), abs=1e-6)
    assert fit.polynomial_residual < 1e-6


def test_vanishing_field_has_no_blowup_family(half_space):
    zero = half_space.with_values(np.zeros_like(half_space.values))
    fit = fit_blowup(rescale_blowup(zero, (0.0, 1.0), 0.5, 1.0))
    assert fit.kind == BlowupKind.UNRESOLVED
    assert math.isinf(fit.fit_residual)


############# WEISS ENERGY #############
def test_heat_kernel_has_unit_mass():
    y = np.linspace(-20.0, 20.0, 4001)[:, np.newaxis]
    assert trapezoid(heat_kernel(y, 0.5), x=y[:, 0]) == pytest.approx(1.0, rel=1e-9)


def test_weiss_quadrature_validation():
    with pytest.raises(ValueError):
        WeissQuadrature(3)
    with pytest.raises(ValueError):
        WeissQuadrature(1, n_sigma=4)
    with pytest.raises(ValueError):
        WeissQuadrature(2, n_theta=5)
    refined = WeissQuadrature(2).refined()
    assert refined.n_sigma % 2 == 1 and refined.n_theta % 2 == 0


def test_richardson_extrapolation():
    tau = [0.5, 0.25, 0.125]
    limit, change = richardson_extrapolate(tau, [3.0 + 2.0 * t for t in tau])
    assert limit == pytest.approx(3.0)
    assert change == pytest.approx(0.0, abs=1e-12)
    offset = 1e-4
    limit, _ = richardson_extrapolate(tau, [3.0 + offset + 2.0 * t for t in tau])
    assert limit == pytest.approx(3.0 + offset)
    limit, change = richardson_extrapolate([0.5], [7.0])
    assert limit == 7.0 and math.isnan(change)
    with pytest.raises(ValueError):
        richardson_extrapolate([0.5, 0.25], [1.0])


def test_half_space_energy_is_scale_invariant():
    evaluator = HalfSpaceWeissEvaluator([1.0])
    quadrature = WeissQuadrature(1)
    values = [evaluator.energy((0.0, 0.0), tau, quadrature) for tau in (1.0, 0.5, 0.125)]
    assert values[0] > 0
    assert values == pytest.approx([values[0]] * 3, rel=1e-10)


def test_A_n_is_stable_under_refinement_and_rotation():
    a1 = compute_A_n(1)
    assert abs(a1 - compute_A_n(1, WeissQuadrature(1).refined())) / a1 < 1e-3
    a2 = compute_A_n(2)
    assert abs(a2 - compute_A_n(2, e=(0.0, 1.0))) / a2 < 1e-3
    with pytest.raises(ValueError):
        compute_A_n(2, WeissQuadrature(1))


def test_sampled_energy_matches_the_analytic_profile(weiss_support):
    grid, time_grid = weiss_support
    solution = exact_half_space([1.0])
    u = solution.sample(grid, time_grid)
    f = solution.forcing_field(grid, time_grid)
    sampled = weiss_energy(u, f, (0.0, 0.0), 0.25)
    analytic = HalfSpaceWeissEvaluator([1.0]).energy((0.0, 0.0), 0.25, WeissQuadrature(1))
    assert sampled == pytest.approx(analytic, rel=1e-2)
    with pytest.raises(CylinderError):
        weiss_energy(u, f, (0.0, 0.0), 0.6)


def test_weiss_sweep_needs_decreasing_scales():
    evaluator = HalfSpaceWeissEvaluator([1.0])
    with pytest.raises(PreconditionError):
        weiss_sweep(evaluator, (0.0, 0.0), [0.25, 0.5], WeissQuadrature(1), 1.0)


############# CLASSIFICATION #############
@pytest.mark.parametrize(
    "ratio, label",
    [
        (1.1, PointLabel.REGULAR),
        (0.8, PointLabel.REGULAR),
        (1.9, PointLabel.SINGULAR),
        (1.5, PointLabel.UNRESOLVED),
        (math.nan, PointLabel.UNRESOLVED),
    ],
)
def test_label_from_ratio(ratio, label):
    assert label_from_ratio(ratio) == label


def test_half_space_point_is_regular(weiss_support):
    grid, time_grid = weiss_support
    solution = exact_half_space([1.0])
    label, weiss = classify_point(
        solution.sample(grid, time_grid),
        solution.forcing_field(grid, time_grid),
        (0.0, 0.0),
        WEISS_TAU_VALUES,
    )
    assert label == PointLabel.REGULAR
    assert 0.95 <= weiss.ratio <= 1.05
    assert weiss.tau_values == WEISS_TAU_VALUES


def test_polynomial_point_is_singular(weiss_support):
    grid, time_grid = weiss_support
    solution = exact_polynomial(0.0, [[0.5]])
    label, weiss = classify_point(
        solution.sample(grid, time_grid),
        solution.forcing_field(grid, time_grid),
        (0.0, 0.0),
        WEISS_TAU_VALUES,
    )
    assert label == PointLabel.SINGULAR
    assert 1.9 <= weiss.ratio <= 2.1


def test_default_tau_sequence(weiss_support):
    grid, time_grid = weiss_support
    u = ScalarField.constant(grid, time_grid, 0.0)
    taus = default_tau_sequence(u, (0.0, 0.0))
    assert len(taus) == 4
    assert taus[0] == pytest.approx(0.5, rel=1e-6)
    assert taus == pytest.approx([taus[0] * 2.0**-k for k in range(4)])
    with pytest.raises(PreconditionError):
        default_tau_sequence(u, (0.0, -0.999))


@pytest.mark.parametrize("angle", [0.0, 0.7, 2.0, 4.5])
def test_radial_scenario_horizon_fits_two_weiss_scales(angle: float):
    spec = to_problem_spec(load_config("radial-2d"))
    u = ScalarField.constant(spec.grid, spec.time_grid, 0.0)
    z = (0.4 * math.cos(angle), 0.4 * math.sin(angle), spec.time_grid.t_end)
    taus = default_tau_sequence(u, z)
    assert len(taus) >= 2
    assert taus[0] == pytest.approx(math.sqrt(0.12) / 2.0, rel=1e-6)


############# SINGULAR SET #############
def _fit_with(M: np.ndarray) -> BlowupFit:
    return BlowupFit(
        kind=BlowupKind.POLYNOMIAL,
        e=np.array([1.0, 0.0]),
        m=2.0 * float(np.trace(M)) - 1.0,
        M=M,
        fit_residual=0.0,
        half_space_residual=1.0,
        polynomial_residual=0.0,
        trace_defect=0.0,
        psd=True,
    )


def test_matrix_rank():
    assert matrix_rank(np.zeros((2, 2))) == 0
    assert matrix_rank(np.diag([1.0, 1e-5])) == 1
    assert matrix_rank(np.eye(2) * 0.25) == 2


def test_singular_structure_groups_by_rank():
    points = np.array([[0.0, 0.0], [0.1, 0.0], [1.0, 1.0], [-1.0, 1.0]])
    fb = FreeBoundarySet(
        dim=2,
        h=(0.1, 0.1),
        times=np.array([0.0]),
        points=[points],
        eps=1e-12,
        labels=[[PointLabel.SINGULAR] * 3 + [PointLabel.REGULAR]],
    )
    fits = {
        (0, 0): _fit_with(np.diag([0.5, 0.0])),
        (0, 1): _fit_with(np.diag([0.0, 0.5])),
        (0, 2): _fit_with(np.eye(2) * 0.25),
    }
    report = singular_structure(fb, fits)
    assert not report.is_empty
    assert report.n_points == 4
    assert report.per_slice_counts == {0: 3}
    strata = report.rank_strata
    assert sorted(strata) == [1, 2]
    assert [record.point_index for record in strata[1]] == [0, 1]
    assert all(not record.isolated for record in strata[1])
    assert strata[2][0].isolated
    assert strata[2][0].kernel_dim == 0

    by_kernel = report.kernel_strata
    assert sorted(by_kernel) == [0, 1]
    assert [record.point_index for record in by_kernel[1]] == [0, 1]
    assert [record.rank for record in by_kernel[0]] == [2]


def test_singular_structure_without_singular_points(half_space):
    fb = extract_free_boundary(half_space)
    report = singular_structure(fb, {})
    assert report.is_empty
    assert report.per_slice_counts == {}
