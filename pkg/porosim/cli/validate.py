"""
Self-check suite of the `validate` command: the numerical core against the
closed-form and brute-force references of `porosim.oracle`.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-10-09
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass
import logging
import math
from typing import Callable

import numpy as np

# Local Libraries
from porosim.analysis.blowup import rescale_blowup
from porosim.analysis.classification import classify_point
from porosim.analysis.weiss import WeissQuadrature, compute_A_n
from porosim.cli.config import load_config, to_problem_spec
from porosim.constants.cli import ExitCode
from porosim.constants.cli.scenario_constants import CONVERGENCE_CELLS, QUASI_STATIC_T1_VALUES
from porosim.constants.geometry import UnitSystem
from porosim.errors import PorosimError
from porosim.forcing.scales import ChargeScaleParams, scale_report
from porosim.geometry.grid import make_grid, make_time_grid
from porosim.oracle.exact import exact_half_space, exact_polynomial, exact_radial_stationary
from porosim.oracle.lcp_enumeration import (
    brute_force_lcp,
    random_lcp_system,
    reference_heat_system,
)
from porosim.solvers.assembly import HeatStepOperator
from porosim.solvers.damped_wave import quasi_static_sweep
from porosim.solvers.diagnostics import check_stefan
from porosim.solvers.lcp import PsorSettings, psor
from porosim.solvers.parabolic_obstacle import OperatorFactory, solve_parabolic

logger: logging.Logger = logging.getLogger(__name__)

LCP_TOLERANCE: float = 1e-10
ORACLE_PSOR_SETTINGS: PsorSettings = PsorSettings(omega=1.2, max_iters=200_000, tol=1e-13)
WEISS_TAU_VALUES: tuple[float, ...] = (0.5, 0.25, 0.125)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


############# CHECKS #############
def check_exact_solutions(_: OperatorFactory) -> CheckResult:
    """Analytic PDE defects of the closed-form solutions vanish."""
    x = np.linspace(-1.0, 1.0, 101)
    xy = np.stack(np.meshgrid(x, x, indexing="ij"), axis=-1)
    t = np.linspace(-1.0, 0.0, 5)[:, np.newaxis]
    solutions = [
        (exact_half_space([1.0]), x[:, np.newaxis]),
        (exact_half_space([math.sqrt(0.5), math.sqrt(0.5)]), xy),
        (exact_polynomial(0.0, [[0.5]]), x[:, np.newaxis]),
        (exact_polynomial(-0.5, np.eye(2) * 0.125), xy),
        (exact_radial_stationary(0.4), xy),
    ]
    worst = 0.0
    for solution, positions in solutions:
        times = t if solution.dim == 1 else t[:, :, np.newaxis]
        worst = max(worst, float(np.max(np.abs(solution.pde_residual(positions, times)))))
        if np.min(solution.u(positions, times)) < 0:
            return CheckResult("exact-solutions", False, f"{solution.kind.name} negative")
    return CheckResult("exact-solutions", worst < 1e-12, f"max defect {worst:.2e}")


def _small_grids() -> list:
    return [
        make_grid(1, 0.0, 1.0, 9, UnitSystem.NORMALIZED),
        make_grid(2, (0.0, 0.0), (1.0, 1.0), (4, 4), UnitSystem.NORMALIZED),
    ]


def check_lcp_oracle(operator_factory: OperatorFactory) -> CheckResult:
    """
    PSOR against active set enumeration on random systems and on one heat step
    assembled independently of the production operator.
    """
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(200):
        system = random_lcp_system(int(rng.integers(1, 13)), rng)
        difference = psor(system, ORACLE_PSOR_SETTINGS).x - brute_force_lcp(system)
        worst = max(worst, float(np.max(np.abs(difference))))

    dt = 0.01
    for grid in _small_grids():
        u_prev = rng.uniform(0.0, 0.1, grid.shape)
        source = rng.uniform(-20.0, 20.0, grid.shape)
        boundary = rng.uniform(0.0, 0.1, grid.shape)
        production = operator_factory(grid, dt).system(u_prev, source, boundary)
        reference = reference_heat_system(u_prev, source, dt, grid.h, boundary)
        difference = psor(production, ORACLE_PSOR_SETTINGS).x - brute_force_lcp(reference)
        worst = max(worst, float(np.max(np.abs(difference))))
    return CheckResult("lcp-oracle", worst <= LCP_TOLERANCE, f"max deviation {worst:.2e}")


def check_stationary_convergence(_: OperatorFactory) -> CheckResult:
    """stationary-1d: error <= 5 h^2 on three grids and order >= 1.8."""
    errors, spacings = [], []
    for n_cells in CONVERGENCE_CELLS:
        config = load_config("stationary-1d", {"grid.n_cells": [n_cells]})
        spec = to_problem_spec(config)
        u = solve_parabolic(spec)
        exact = exact_half_space([1.0])
        errors.append(float(np.max(np.abs(u.values[-1] - exact.u(u.grid.positions())))))
        spacings.append(u.grid.h[0])
    bounded = all(error <= 5.0 * h * h for error, h in zip(errors, spacings))
    orders = [
        math.log(coarse / fine) / math.log(h_coarse / h_fine)
        for coarse, fine, h_coarse, h_fine in zip(errors, errors[1:], spacings, spacings[1:])
    ]
    detail = "errors " + " ".join(f"{e:.2e}" for e in errors)
    detail += " orders " + " ".join(f"{p:.2f}" for p in orders)
    return CheckResult(
        "stationary-convergence", bounded and min(orders) >= 1.8, detail
    )


def check_weiss_constants(_: OperatorFactory) -> CheckResult:
    """A_n under refinement and rotation, and the Weiss ratio of exact profiles."""
    a1 = compute_A_n(1)
    a1_fine = compute_A_n(1, WeissQuadrature(1).refined())
    a2 = compute_A_n(2)
    a2_rotated = compute_A_n(2, e=(0.0, 1.0))
    doubling = abs(a1 - a1_fine) / a1
    rotation = abs(a2 - a2_rotated) / a2

    grid = make_grid(1, -1.0, 2.0, 400, UnitSystem.NORMALIZED)
    time_grid = make_time_grid(-1.0, 0.01, 100)
    ratios = []
    for solution in (exact_half_space([1.0]), exact_polynomial(0.0, [[0.5]])):
        _, weiss = classify_point(
            solution.sample(grid, time_grid),
            solution.forcing_field(grid, time_grid),
            (0.0, 0.0),
            WEISS_TAU_VALUES,
        )
        ratios.append(weiss.ratio)
    passed = (
        doubling < 1e-3
        and rotation < 1e-3
        and 0.95 <= ratios[0] <= 1.05
        and 1.90 <= ratios[1] <= 2.10
    )
    detail = (
        f"A_1={a1:.6f} A_2={a2:.6f} doubling={doubling:.1e} rotation={rotation:.1e} "
        f"ratios={ratios[0]:.4f},{ratios[1]:.4f}"
    )
    return CheckResult("weiss-a_n", passed, detail)


def check_blowup_invariance(_: OperatorFactory) -> CheckResult:
    """
    Rescalings of the 2-homogeneous profiles 1/2 x_+^2, 1/2 x^2, -t and
    -t/2 + x^2/4 coincide for lambda in {1, 1/2, 1/4}.
    """
    grid = make_grid(1, -1.0, 2.0, 200, UnitSystem.NORMALIZED)
    stationary = make_time_grid(0.0, 0.01, 100)
    ancient = make_time_grid(-1.0, 0.01, 100)
    profiles = {
        "half_space": (exact_half_space([1.0]), stationary, (0.0, 1.0)),
        "parabola": (exact_polynomial(0.0, [[0.5]]), stationary, (0.0, 1.0)),
        "linear_in_t": (exact_polynomial(-1.0, [[0.0]]), ancient, (0.0, 0.0)),
        "mixed": (exact_polynomial(-0.5, [[0.25]]), ancient, (0.0, 0.0)),
    }
    changes = {}
    for name, (exact, time_grid, z_star) in profiles.items():
        u = exact.sample(grid, time_grid)
        rescaled = [rescale_blowup(u, z_star, lam, 1.0).values for lam in (1.0, 0.5, 0.25)]
        changes[name] = max(
            float(np.max(np.abs(a - b))) for a, b in zip(rescaled, rescaled[1:])
        )
    worst = max(changes.values())
    detail = " ".join(f"{name}={change:.2e}" for name, change in changes.items())
    return CheckResult("blowup-invariance", worst <= 1e-6, detail)


def check_quasi_static(_: OperatorFactory) -> CheckResult:
    """Damped wave approaches the parabolic solution as the damping grows."""
    spec = to_problem_spec(load_config("traveling-wave-1d"))
    gaps = quasi_static_sweep(spec, QUASI_STATIC_T1_VALUES)
    decreasing = all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
    return CheckResult(
        "quasi-static", decreasing, "gaps " + " ".join(f"{gap:.3e}" for gap in gaps)
    )


def check_stefan_flicker(_: OperatorFactory) -> CheckResult:
    """Sustained forcing keeps u_t >= 0, switching it off lets the dimple recede."""
    sustained = check_stefan(solve_parabolic(to_problem_spec(load_config("traveling-wave-1d"))))
    flicker = check_stefan(solve_parabolic(to_problem_spec(load_config("flicker-1d"))))
    passed = sustained.monotone and not flicker.monotone and flicker.violation < 0
    return CheckResult(
        "stefan-flicker",
        passed,
        f"sustained {sustained.violation:.2e} flicker {flicker.violation:.2e}",
    )


def check_scale_report(_: OperatorFactory) -> CheckResult:
    report = scale_report(ChargeScaleParams())
    passed = (
        math.isclose(report.per_molecule_force, 1e-11, rel_tol=1e-9)
        and math.isclose(report.total_force, 1e-2, rel_tol=1e-9)
        and 1e-21 <= report.gravity_force <= 1e-19
    )
    return CheckResult(
        "scale-report",
        passed,
        f"per_molecule={report.per_molecule_force:.3g} N total={report.total_force:.3g} N "
        f"gravity={report.gravity_force:.3g} N",
    )


VALIDATION_CHECKS_DICT: dict[str, Callable[[OperatorFactory], CheckResult]] = {
    "exact-solutions": check_exact_solutions,
    "lcp-oracle": check_lcp_oracle,
    "stationary-convergence": check_stationary_convergence,
    "weiss-a_n": check_weiss_constants,
    "blowup-invariance": check_blowup_invariance,
    "quasi-static": check_quasi_static,
    "stefan-flicker": check_stefan_flicker,
    "scale-report": check_scale_report,
}
"""Checks of the validate command by name, run in this order."""


def run_validation(
    name_filter: str | None = None, operator_factory: OperatorFactory = HeatStepOperator
) -> list[CheckResult]:
    """
    Runs the checks whose names contain name_filter.

    Args:
        name_filter (str | None):
            Substring of the check names to run; all checks when None.
        operator_factory (OperatorFactory):
            Builds the heat step operator compared against the independent
            assembly.

    Returns:
        list[CheckResult]:
            One result per selected check. A check that raises fails with the
            error as detail.
    """
    results = []
    for name, check in VALIDATION_CHECKS_DICT.items():
        if name_filter and name_filter not in name:
            continue
        logger.info("Running check %s", name)
        try:
            result = check(operator_factory)
        except PorosimError as error:
            result = CheckResult(name, False, f"{type(error).__name__}: {error}")
        results.append(result)
    return results


def cmd_validate(
    name_filter: str | None = None, operator_factory: OperatorFactory = HeatStepOperator
) -> int:
    """Prints the pass/fail table; exit status 0 iff every selected check passes."""
    results = run_validation(name_filter, operator_factory)
    if not results:
        print(f"no check matches {name_filter!r}")
        return ExitCode.FAILURE.value
    width = max(len(result.name) for result in results)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{result.name:<{width}}  {status}  {result.detail}")
    passed = all(result.passed for result in results)
    return ExitCode.SUCCESS.value if passed else ExitCode.FAILURE.value
