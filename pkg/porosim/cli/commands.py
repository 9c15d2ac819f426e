"""
Pipelines behind the sub-commands. Every command returns its exit status;
errors propagate to `porosim.cli.main`, which maps them to status and error
line.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-10-13
"""

# Python Libraries
from __future__ import annotations
from concurrent.futures import ProcessPoolExecutor
import csv
import json
import logging
import math
import os
from pathlib import Path
from typing import Any, Iterable, Mapping

import numpy as np
import psutil

# Local Libraries
import porosim
from porosim.analysis.blowup import BlowupFit, fit_blowup, max_blowup_scale, rescale_blowup
from porosim.analysis.classification import (
    classify_point,
    default_tau_sequence,
    singular_structure,
)
from porosim.analysis.free_boundary import (
    FreeBoundarySet,
    extract_free_boundary,
    free_boundary_measure,
)
from porosim.analysis.regularity import RegularityReport, regularity_report
from porosim.analysis.weiss import FieldWeissEvaluator, WeissQuadrature, WeissValue
from porosim.cli.config import (
    RunConfig,
    charge_scale_params,
    config_hash,
    normalization_record,
    psor_settings,
    to_problem_spec,
    unit_system,
    wave_scheme,
)
from porosim.cli.plots import plot_trajectory
from porosim.constants.analysis import PointLabel
from porosim.constants.cli import ExitCode
from porosim.constants.cli.cli_constants import ENV_THREADS, METADATA_SUFFIX, RHO_SWEEP_DICT
from porosim.errors import CylinderError, ExtrapolationError, PorosimError, PreconditionError
from porosim.forcing.density import forcing_density, to_statement_convention
from porosim.forcing.scales import scale_report
from porosim.geometry.field import ScalarField
from porosim.geometry.field_io import read_field_csv, write_field_csv
from porosim.oracle.exact import ExactSolution, exact_half_space, exact_radial_stationary
from porosim.solvers.core.base_solver import BaseMembraneSolver
from porosim.solvers.damped_wave import DampedWaveSolver
from porosim.solvers.diagnostics import check_stefan, small_deformation_measure
from porosim.solvers.normalization import normalize_field
from porosim.solvers.parabolic_obstacle import ParabolicObstacleSolver

logger: logging.Logger = logging.getLogger(__name__)


############# OUTPUT #############
def write_metadata(path: Path, config: RunConfig, entries: Mapping[str, Any]) -> Path:
    """Writes the key=value sidecar of an output file."""
    sidecar = path.with_name(path.name + METADATA_SUFFIX)
    lines = {
        "file": path.name,
        "config_hash": config_hash(config),
        "scenario": config.scenario,
        "porosim_version": porosim.__version__,
        **entries,
    }
    sidecar.write_text("".join(f"{key}={value}\n" for key, value in lines.items()))
    return sidecar


def write_rows(path: Path, header: Iterable[str], rows: Iterable[Iterable[Any]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(list(header))
        writer.writerows(rows)
    return path


def _number(value: float) -> str:
    return f"{value:.17g}"


############# SIMULATE #############
def build_solver(config: RunConfig) -> BaseMembraneSolver:
    spec = to_problem_spec(config)
    match config.get("solver.model"):
        case "obstacle":
            return ParabolicObstacleSolver(spec, psor_settings(config))
        case "unconstrained":
            return ParabolicObstacleSolver(spec, psor_settings(config), constrained=False)
        case "damped_wave":
            return DampedWaveSolver(spec, wave_scheme(config))


def exact_reference(config: RunConfig) -> ExactSolution | None:
    """
    Closed-form solution reproduced by the configuration, if any: stationary
    half-space or radial data kept by f = -1 in normalized units.
    """
    initial = config.section("initial")
    boundary = config.section("boundary")
    if (
        config.get("solver.model") != "obstacle"
        or config.get("forcing.mode") != "uniform"
        or boundary["kind"] != "prescribed_trace"
        or initial.get("profile") != boundary.get("profile")
    ):
        return None
    spec = to_problem_spec(config)
    record = normalization_record(spec)
    if any(not math.isclose(scale, 1.0) for scale in record.as_dict().values()):
        return None
    if not math.isclose(config.get("forcing.value") / record.f_scale, -1.0):
        return None
    keys = ("center", "e", "r0")
    if any(initial.get(key) != boundary.get(key) for key in keys):
        return None
    match initial["profile"]:
        case "half_space":
            e = initial.get("e", [1.0] + [0.0] * (spec.grid.dim - 1))
            return exact_half_space(e, initial.get("center"))
        case "radial_stationary":
            return exact_radial_stationary(initial["r0"], initial.get("center", (0.0, 0.0)))
    return None


def simulate(config: RunConfig) -> tuple[ScalarField, BaseMembraneSolver]:
    solver = build_solver(config)
    return solver.solve(), solver


def cmd_simulate(config: RunConfig, out: Path, dry_run: bool = False) -> int:
    """
    Solves the configured problem and writes trajectory.csv, its sidecar and
    trajectory.svg.
    """
    if dry_run:
        print(config.dumps(), end="")
        return ExitCode.SUCCESS.value

    u, solver = simulate(config)
    fb = extract_free_boundary(u)
    stefan = check_stefan(u)
    slope = small_deformation_measure(u)

    entries: dict[str, Any] = {
        "dim": u.grid.dim,
        "n_cells": ";".join(str(n) for n in u.grid.n_cells),
        "dt": _number(u.time_grid.dt),
        "n_steps": u.time_grid.n_steps,
        "model": config.get("solver.model"),
        "stefan_monotone": stefan.monotone,
        "stefan_violation": _number(stefan.violation),
        "max_squared_slope": _number(slope),
        "free_boundary_points": fb.count,
    }
    record = getattr(solver, "normalization", None)
    if record is not None:
        entries.update({key: _number(value) for key, value in record.as_dict().items()})
    for report in solver.reports:
        entries[f"step.{report.time_index}"] = f"{report.iterations};{report.residual:.6e}"

    trajectory = write_field_csv(u, out / "trajectory.csv")
    write_metadata(trajectory, config, entries)
    figure = plot_trajectory(u, fb, out / "trajectory.svg", config.scenario)
    write_metadata(figure, config, {"source": trajectory.name})

    print(f"scenario={config.scenario} steps={u.time_grid.n_steps} max_u={np.max(u.values):.6g}")
    print(f"stefan_monotone={stefan.monotone} violation={stefan.violation:.3e}")
    print(f"free_boundary_points={fb.count} max_squared_slope={slope:.3e}")
    exact = exact_reference(config)
    if exact is not None:
        error = float(np.max(np.abs(u.values[-1] - exact.u(u.grid.positions()))))
        print(f"final_slice_linf_error={error:.6e}")
    print(f"wrote {trajectory} and {figure}")
    return ExitCode.SUCCESS.value


############# ANALYZE #############
def auto_rho_list(u: ScalarField, z: tuple[float, ...]) -> list[float]:
    """
    Geometric radius sweep fitting the sampled region around z, bounded below
    by a few cells and by the time step (rho^2 > dt).
    """
    grid = u.grid
    space = min(min(x - lo, hi - x) for x, lo, hi in zip(z[:-1], grid.origin, grid.upper))
    elapsed = z[-1] - u.time_grid.t0
    admissible = 0.999 * min(space, math.sqrt(max(elapsed, 0.0)))
    largest = min(RHO_SWEEP_DICT["largest"], admissible)
    smallest = max(
        largest / RHO_SWEEP_DICT["span"],
        RHO_SWEEP_DICT["min_cells"] * max(grid.h),
        math.sqrt(u.time_grid.dt) * (1.0 + RHO_SWEEP_DICT["time_margin"]),
    )
    if smallest >= largest:
        return [largest]
    return list(np.geomspace(largest, smallest, RHO_SWEEP_DICT["count"]))


def analysis_slices(config: RunConfig, fb: FreeBoundarySet) -> list[int]:
    if config.get("analysis.slices") == "last":
        return [len(fb.points) - 1]
    return list(range(0, len(fb.points), int(config.get("analysis.stride"))))


def _blowup(
    u: ScalarField, f: ScalarField, z: tuple[float, ...], lambdas: list[float]
) -> tuple[BlowupFit | None, float]:
    """Fit at the smallest admissible lambda and the L-infinity change along the lambdas."""
    f_at = float(f.interpolator()(np.array([[z[-1], *z[:-1]]]))[0])
    if not f_at > 0:
        return None, math.nan
    limit = max_blowup_scale(u, z, f_at)
    usable = sorted((lam for lam in lambdas if lam <= limit), reverse=True)
    if not usable:
        return None, math.nan
    rescaled = [rescale_blowup(u, z, lam, f_at) for lam in usable]
    change = max(
        (
            float(np.max(np.abs(a.values - b.values)))
            for a, b in zip(rescaled, rescaled[1:])
        ),
        default=math.nan,
    )
    return fit_blowup(rescaled[-1]), change


def analyze_field(
    config: RunConfig, u: ScalarField, f: ScalarField
) -> tuple[FreeBoundarySet, list[dict[str, Any]], list[WeissValue]]:
    """
    Runs the point diagnostics on the selected slices of a normalized
    trajectory. Diagnostics whose preconditions fail leave NaN entries and the
    label UNRESOLVED.
    """
    analysis = config.section("analysis")
    fb = extract_free_boundary(u)
    if fb.is_empty:
        return fb, [], []

    quadrature = WeissQuadrature(u.grid.dim)
    evaluator = FieldWeissEvaluator(u, f)
    labels: dict[tuple[int, int], PointLabel] = {}
    fits: dict[tuple[int, int], BlowupFit] = {}
    rows: list[dict[str, Any]] = []
    weiss_values: list[WeissValue] = []

    for time_index in analysis_slices(config, fb):
        for point_index in range(len(fb.points[time_index])):
            z = fb.point(time_index, point_index)
            row: dict[str, Any] = {
                "time_index": time_index,
                "point_index": point_index,
                "point": z,
            }

            try:
                rho_list = analysis["rho_list"] or auto_rho_list(u, z)
                report = regularity_report(u, z, rho_list, int(analysis["refine"]))
            except (PreconditionError, CylinderError) as error:
                logger.warning("Regularity sweep skipped at %s: %s", z, error)
                report = None
            row["regularity"] = report

            label, weiss = PointLabel.UNRESOLVED, None
            try:
                tau_values = analysis["tau_list"] or default_tau_sequence(
                    u, z, int(analysis["n_tau"]), int(analysis["min_tau_cells"])
                )
                label, weiss = classify_point(
                    u, f, z, tau_values, analysis["threshold"], quadrature, evaluator
                )
                weiss_values.append(weiss)
            except (PreconditionError, CylinderError, ExtrapolationError) as error:
                logger.warning("Classification skipped at %s: %s", z, error)
            labels[(time_index, point_index)] = label
            row["label"] = label
            row["weiss"] = weiss

            fit, change = _blowup(u, f, z, [float(lam) for lam in analysis["lambdas"]])
            if fit is not None:
                fits[(time_index, point_index)] = fit
            row["fit"] = fit
            row["blowup_change"] = change
            rows.append(row)

    return fb.with_labels(labels), rows, weiss_values


def _regularity_columns(report: RegularityReport | None) -> list[str]:
    if report is None:
        return ["nan"] * 5
    return [_number(value) for value in report.as_dict().values()]


def cmd_analyze(config: RunConfig, out: Path, trajectory: Path | None = None) -> int:
    """
    Free boundary diagnostics. Writes regularity.csv, classification.csv,
    weiss.csv and overlay.svg, all in normalized units.
    """
    spec = to_problem_spec(config)
    if trajectory is None:
        u, _ = simulate(config)
    else:
        u = read_field_csv(trajectory, "u", unit_system(config))
    record = normalization_record(spec)
    f_physical = forcing_density(spec.forcing, u.grid, u.time_grid)
    if spec.is_normalized:
        u_normalized = u
        f = to_statement_convention(f_physical)
    else:
        u_normalized = normalize_field(u, record)
        f = to_statement_convention(normalize_field(f_physical, record, record.f_scale))

    fb, rows, weiss_values = analyze_field(config, u_normalized, f)
    dim = u.grid.dim
    coordinates = ["x", "y"][:dim] + ["t"]

    write_rows(
        out / "regularity.csv",
        ["time_index", *coordinates, "exponent", "c_lower", "C_upper", "M_bound", "skipped_rho"],
        (
            [
                row["time_index"],
                *map(_number, row["point"]),
                *_regularity_columns(row["regularity"]),
            ]
            for row in rows
        ),
    )
    classification_rows = []
    for row in rows:
        weiss, fit = row["weiss"], row["fit"]
        classification_rows.append(
            [
                row["time_index"],
                *map(_number, row["point"]),
                row["label"].name,
                _number(weiss.ratio) if weiss else "nan",
                _number(weiss.extrapolated_limit) if weiss else "nan",
                _number(weiss.extrapolation_residual) if weiss else "nan",
                fit.kind.name if fit else "",
                ";".join(_number(c) for c in fit.e) if fit else "",
                _number(fit.m) if fit else "nan",
                _number(fit.trace_defect) if fit else "nan",
                _number(fit.fit_residual) if fit else "nan",
                _number(row["blowup_change"]),
            ]
        )
    write_rows(
        out / "classification.csv",
        [
            "time_index",
            *coordinates,
            "label",
            "ratio",
            "W_limit",
            "extrapolation_residual",
            "blowup_kind",
            "e",
            "m",
            "trace_defect",
            "fit_residual",
            "blowup_change",
        ],
        classification_rows,
    )
    write_rows(
        out / "weiss.csv",
        [*coordinates, "tau", "W"],
        (
            [*map(_number, value.point), _number(tau), _number(w)]
            for value in weiss_values
            for tau, w in zip(value.tau_values, value.W_values)
        ),
    )
    overlay = plot_trajectory(
        u_normalized, fb, out / "overlay.svg", f"{config.scenario} (normalized)"
    )
    for path in ("regularity.csv", "classification.csv", "weiss.csv", "overlay.svg"):
        write_metadata(out / path, config, {"units": "normalized"})

    if fb.is_empty:
        print("no FB points")
        return ExitCode.SUCCESS.value

    fits = {
        (row["time_index"], row["point_index"]): row["fit"]
        for row in rows
        if row["fit"] is not None
    }
    structure = singular_structure(fb, fits)
    counts = {label: 0 for label in PointLabel}
    for row in rows:
        counts[row["label"]] += 1
    exponents = [
        row["regularity"].fitted_exponent for row in rows if row["regularity"] is not None
    ]
    print(
        f"free_boundary_points={fb.count} analysed={len(rows)} "
        + " ".join(f"{label.name.lower()}={count}" for label, count in counts.items())
    )
    if exponents:
        print(f"exponent_min={min(exponents):.4f} exponent_max={max(exponents):.4f}")
    print(f"free_boundary_measure={free_boundary_measure(u_normalized, fb):.6e}")
    for rank, records in sorted(structure.rank_strata.items()):
        isolated = sum(record.isolated for record in records)
        print(
            f"singular_rank_{rank}={len(records)} kernel_dim={dim - rank} isolated={isolated}"
        )
    print(f"wrote {out / 'classification.csv'} and {overlay}")
    return ExitCode.SUCCESS.value


############# SCALE REPORT #############
def cmd_scale_report(config: RunConfig, as_json: bool = False) -> int:
    """Prints the force magnitudes of the charge estimate."""
    report = scale_report(charge_scale_params(config)).as_dict()
    if as_json:
        print(json.dumps(report, sort_keys=True))
    else:
        width = max(len(key) for key in report)
        for key, value in report.items():
            print(f"{key:<{width}}  {value:.6g}")
    return ExitCode.SUCCESS.value


############# SWEEP #############
def sweep_workers() -> int:
    """Worker count, POROSIM_THREADS if set, else the physical core count."""
    configured = os.environ.get(ENV_THREADS)
    if configured:
        return max(1, int(configured))
    return psutil.cpu_count(logical=False) or 1


def _run_member(data: dict, source: str, out: str) -> tuple[str, int, str]:
    config = RunConfig(data, source).validate()
    try:
        status = cmd_simulate(config, Path(out))
    except PorosimError as error:
        return out, ExitCode.FAILURE.value, f"{type(error).__name__}: {error}"
    return out, status, ""


def cmd_sweep(config: RunConfig, out: Path) -> int:
    """
    Simulates the configuration once per value of sweep.parameter, each run
    in its own directory `<parameter>=<value>` under out.
    """
    parameter = config.get("sweep.parameter")
    values = config.get("sweep.values")
    if not parameter or not values:
        print("sweep.parameter and sweep.values are empty; nothing to run")
        return ExitCode.SUCCESS.value

    members = [
        (config.with_override(parameter, value).validate(), out / f"{parameter}={value}")
        for value in values
    ]
    workers = min(sweep_workers(), len(members))
    logger.info("Sweeping %s over %d values with %d workers", parameter, len(members), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(
            pool.map(
                _run_member,
                [member.data for member, _ in members],
                [member.source for member, _ in members],
                [str(path) for _, path in members],
            )
        )
    failed = [result for result in results if result[1] != ExitCode.SUCCESS.value]
    for path, status, message in results:
        print(f"{path}: {'ok' if status == 0 else 'failed'} {message}".rstrip())
    return ExitCode.FAILURE.value if failed else ExitCode.SUCCESS.value
