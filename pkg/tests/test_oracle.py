import math

import numpy as np
import pytest

from porosim.errors import OracleError, PreconditionError
from porosim.oracle import (
    CylinderRegion,
    brute_force_lcp,
    exact_half_space,
    exact_polynomial,
    exact_radial_stationary,
    random_lcp_system,
    reference_heat_system,
    reference_quadrature,
)
from porosim.oracle.quadrature import trapezoid_order
from porosim.solvers import LcpSystem, complementarity_residual


############# EXACT SOLUTIONS #############
@pytest.mark.parametrize(
    "solution",
    [
        exact_half_space([1.0]),
        exact_half_space([0.6, -0.8], center=[0.1, 0.2]),
        exact_polynomial(0.0, [[0.5]]),
        exact_polynomial(-0.5, np.eye(2) * 0.125),
        exact_radial_stationary(0.4),
    ],
)
def test_exact_solutions_solve_the_equation(solution):
    rng = np.random.default_rng(0)
    positions = rng.uniform(-1.0, 1.0, (200, solution.dim))
    t = rng.uniform(-1.0, 0.0, 200)
    assert np.max(np.abs(solution.pde_residual(positions, t))) < 1e-12
    assert np.all(solution.u(positions, t) >= 0.0)
    assert np.all(solution.f(positions, t) == 1.0)


def test_half_space_needs_a_unit_normal():
    with pytest.raises(PreconditionError):
        exact_half_space([1.0, 1.0])


@pytest.mark.parametrize(
    "m, M, message",
    [
        (0.0, [[0.25, 0.1], [0.0, 0.25]], "symmetric"),
        (0.0, [[1.0]], "instead of 1"),
        (0.0, np.diag([0.75, -0.25]), "negative eigenvalue"),
        (1.0, [[1.0]], "m = 1 > 0"),
        (0.0, np.eye(3) / 6.0, "1x1 or 2x2"),
    ],
)
def test_polynomial_conditions(m, M, message):
    with pytest.raises(PreconditionError, match=message):
        exact_polynomial(m, M)


def test_radial_solution_is_c1_across_the_contact_circle():
    solution = exact_radial_stationary(0.4, center=(0.2, -0.1))
    inside = np.array([[0.2, -0.1], [0.3, 0.0]])
    assert np.all(solution.u(inside) == 0.0)
    delta = 1e-3
    outside = np.array([[0.2 + 0.4 + delta, -0.1]])
    assert solution.u(outside)[0] == pytest.approx(0.5 * delta**2, rel=1e-2)
    with pytest.raises(PreconditionError):
        exact_radial_stationary(0.0)


def test_exact_solution_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        exact_half_space([1.0]).u(np.zeros((3, 2)))


############# ENUMERATION #############
def test_brute_force_on_a_diagonal_system():
    system = LcpSystem(np.diag([2.0, 3.0]), np.array([2.0, -3.0]))
    assert np.allclose(brute_force_lcp(system), (1.0, 0.0))


def test_brute_force_solutions_are_complementary():
    for seed in range(20):
        system = random_lcp_system(8, seed)
        x = brute_force_lcp(system)
        assert np.all(x >= 0.0)
        assert complementarity_residual(system, x) < 1e-10


def test_brute_force_limits():
    with pytest.raises(ValueError):
        brute_force_lcp(random_lcp_system(21, 0))
    with pytest.raises(OracleError):
        brute_force_lcp(LcpSystem(np.array([[-1.0]]), np.array([1.0])))


def test_random_systems_are_positive_definite():
    matrix = random_lcp_system(12, 5).matrix.toarray()
    assert np.allclose(matrix, matrix.T)
    assert np.linalg.eigvalsh(matrix).min() > 0.0


def test_reference_heat_system_in_1d():
    boundary = np.array([1.0, 0.0, 0.0, 0.0, 2.0])
    system = reference_heat_system(np.zeros(5), np.zeros(5), 1.0, (1.0,), boundary)
    expected = np.array([[3.0, -1.0, 0.0], [-1.0, 3.0, -1.0], [0.0, -1.0, 3.0]])
    assert np.allclose(system.matrix.toarray(), expected)
    assert np.allclose(system.rhs, (1.0, 0.0, 2.0))


############# QUADRATURE #############
def test_reference_quadrature_of_known_integrals():
    ball = CylinderRegion((0.0,), 1.0)
    assert reference_quadrature(lambda x, t: x[..., 0] ** 2, ball) == pytest.approx(
        2.0 / 3.0, rel=1e-4
    )
    disc = CylinderRegion((0.5, 0.5), 1.0)
    assert reference_quadrature(lambda x, t: np.ones(x.shape[:-1]), disc) == pytest.approx(
        math.pi
    )
    cylinder = CylinderRegion((0.0,), 1.0, 0.0, 2.0)
    assert reference_quadrature(
        lambda x, t: x[..., 0] ** 2 * t, cylinder
    ) == pytest.approx(4.0 / 3.0, rel=1e-4)


def test_trapezoid_rule_is_second_order():
    ball = CylinderRegion((0.0,), 1.0)
    order = trapezoid_order(lambda x, t: np.cos(x[..., 0]), ball, (20, 40), 2.0 * math.sin(1.0))
    assert order == pytest.approx(2.0, abs=0.05)


def test_cylinder_region_validation():
    with pytest.raises(ValueError):
        CylinderRegion((0.0,), 0.0)
    with pytest.raises(ValueError):
        CylinderRegion((0.0,), 1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        CylinderRegion((0.0, 0.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        reference_quadrature(lambda x, t: x[..., 0], CylinderRegion((0.0,), 1.0), 0)
