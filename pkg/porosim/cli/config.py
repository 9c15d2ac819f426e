"""
Run configuration: TOML documents with dotted keys merged over the defaults,
or the name of a bundled scenario.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-09-02
"""

# Python Libraries
from __future__ import annotations
import copy
from dataclasses import dataclass
import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Any, Mapping

import numpy as np
import toml

# Local Libraries
from porosim.constants.cli.cli_constants import (
    CONFIG_CHOICES_DICT,
    CONFIG_DEFAULTS_DICT,
    CONFIG_RANGES_DICT,
    INTEGER_KEYS,
)
from porosim.constants.cli.scenario_constants import SCENARIO_DICT
from porosim.constants.geometry import UnitSystem
from porosim.constants.solvers import BoundaryKind, ProfileKind, WaveScheme
from porosim.errors import ConfigError
from porosim.forcing.density import ForcingSpec
from porosim.forcing.scales import ChargeScaleParams
from porosim.forcing.wave import WaveForcingParams
from porosim.geometry.field_io import read_field_csv
from porosim.geometry.grid import make_grid, make_time_grid
from porosim.solvers.lcp import PsorSettings
from porosim.solvers.problem import (
    BoundarySpec,
    NormalizationRecord,
    ObstacleProblemSpec,
    PhysicalConstants,
)
from porosim.solvers.profiles import make_profile, make_profile_field

logger: logging.Logger = logging.getLogger(__name__)

PROFILE_PARAMETERS: tuple[str, ...] = ("center", "e", "m", "M", "a", "r0")


def deep_merge(base: Mapping[str, Any], override: Mapping[str, Any]) -> dict[str, Any]:
    """Recursive dictionary merge; values of override win."""
    merged = copy.deepcopy(dict(base))
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _nested(dotted: str, value: Any) -> dict[str, Any]:
    head, _, rest = dotted.partition(".")
    return {head: _nested(rest, value) if rest else value}


@dataclass(frozen=True, eq=False)
class RunConfig:
    """
    Resolved configuration.

    Attributes:
        data (dict):
            Complete nested settings, defaults included.
        source (str):
            Scenario name or file the configuration came from.
    """

    data: dict[str, Any]
    source: str = "defaults"

    def get(self, dotted: str) -> Any:
        value: Any = self.data
        for part in dotted.split("."):
            if not isinstance(value, Mapping) or part not in value:
                raise ConfigError(f"Unknown setting '{dotted}'.")
            value = value[part]
        return value

    def section(self, name: str) -> dict[str, Any]:
        return dict(self.get(name))

    @property
    def scenario(self) -> str:
        return str(self.data["scenario"])

    def with_override(self, dotted: str, value: Any) -> RunConfig:
        self.get(dotted)
        return RunConfig(deep_merge(self.data, _nested(dotted, value)), self.source)

    def dumps(self) -> str:
        return toml.dumps(self.data)

    def validate(self) -> RunConfig:
        """
        Checks choices, ranges, list lengths and referenced files.

        Raises:
            ConfigError:
                Naming the first offending setting.
        """
        for dotted, choices in CONFIG_CHOICES_DICT.items():
            if self.get(dotted) not in choices:
                raise ConfigError(
                    f"{dotted} = {self.get(dotted)!r} is not one of {', '.join(choices)}."
                )

        for dotted, (lo, hi) in CONFIG_RANGES_DICT.items():
            value = self.get(dotted)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{dotted} must be a number, got {value!r}.")
            if dotted in INTEGER_KEYS:
                if int(value) != value or not lo <= value <= hi:
                    raise ConfigError(f"{dotted} = {value} must be an integer in [{lo}, {hi}].")
                continue
            if dotted == "physics.T1" and value == math.inf:
                continue
            if math.isnan(value) or not lo < value < hi:
                raise ConfigError(f"{dotted} = {value} must lie in ({lo:g}, {hi:g}).")
        stagger = self.get("grid.stagger")
        if not 0.0 <= stagger < 1.0:
            raise ConfigError(f"grid.stagger = {stagger} must lie in [0, 1).")

        dim = self.get("grid.dim")
        if dim not in (1, 2):
            raise ConfigError(f"grid.dim must be 1 or 2, got {dim}.")
        for key in ("origin", "extent", "n_cells"):
            values = self.get(f"grid.{key}")
            if not isinstance(values, list) or len(values) != dim:
                raise ConfigError(f"grid.{key} needs {dim} entries, got {values!r}.")
        if any(int(n) != n or n < 2 for n in self.get("grid.n_cells")):
            raise ConfigError("grid.n_cells entries must be integers >= 2.")
        if any(not extent > 0 for extent in self.get("grid.extent")):
            raise ConfigError("grid.extent entries must be positive.")

        if self.get("forcing.mode") == "table":
            path = Path(self.get("forcing.table_path"))
            if not path.is_file():
                raise ConfigError(f"forcing.table_path {str(path)!r} does not exist.")

        for dotted in ("analysis.rho_list", "analysis.tau_list", "analysis.lambdas"):
            values = self.get(dotted)
            if not isinstance(values, list) or any(not v > 0 for v in values):
                raise ConfigError(f"{dotted} must be a list of positive numbers.")
        if self.get("sweep.parameter"):
            self.get(self.get("sweep.parameter"))
        return self


def load_config(
    source: str | Path | None = None, overrides: Mapping[str, Any] | None = None
) -> RunConfig:
    """
    Resolves a configuration.

    Args:
        source (str | Path | None):
            Bundled scenario name or path of a TOML file. A file may name a
            scenario in its `scenario` key and override parts of it. None gives
            the defaults.
        overrides (Mapping[str, Any] | None):
            Dotted keys applied last.

    Returns:
        RunConfig:
            The validated configuration.

    Raises:
        ConfigError:
            For unreadable files, unknown scenarios and invalid settings.
    """
    data = copy.deepcopy(CONFIG_DEFAULTS_DICT)
    label = "defaults"
    if source is not None:
        source = str(source)
        if source in SCENARIO_DICT:
            data = deep_merge(data, SCENARIO_DICT[source])
            data["scenario"] = source
            label = source
        else:
            path = Path(source)
            if not path.is_file():
                raise ConfigError(
                    f"{source!r} is neither a file nor one of the scenarios "
                    f"{', '.join(SCENARIO_DICT)}."
                )
            try:
                document = toml.load(path)
            except toml.TomlDecodeError as error:
                raise ConfigError(f"{path}: {error}") from error
            scenario = document.get("scenario")
            if scenario is not None and scenario in SCENARIO_DICT:
                data = deep_merge(data, SCENARIO_DICT[scenario])
            unknown = set(document) - set(CONFIG_DEFAULTS_DICT)
            if unknown:
                raise ConfigError(f"Unknown sections {', '.join(sorted(unknown))} in {path}.")
            data = deep_merge(data, document)
            label = str(path)

    config = RunConfig(data, label)
    for dotted, value in (overrides or {}).items():
        config = config.with_override(dotted, value)
    logger.debug("Resolved configuration from %s", label)
    return config.validate()


def config_hash(config: RunConfig) -> str:
    """sha256 of the canonical JSON form of the settings."""
    canonical = json.dumps(config.data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _profile(section: Mapping[str, Any]) -> tuple[ProfileKind, dict[str, Any]]:
    kind = ProfileKind[section.get("profile", "zero").upper()]
    params = {key: section[key] for key in PROFILE_PARAMETERS if key in section}
    return kind, params


def unit_system(config: RunConfig) -> UnitSystem:
    return UnitSystem[config.get("physics.units").upper()]


def to_problem_spec(config: RunConfig) -> ObstacleProblemSpec:
    """
    Builds the obstacle problem of a configuration.

    grid.stagger shifts the grid by that fraction of a cell towards negative
    coordinates.
    """
    grid_settings = config.section("grid")
    extent = [float(e) for e in grid_settings["extent"]]
    n_cells = [int(n) for n in grid_settings["n_cells"]]
    origin = [
        float(o) - grid_settings["stagger"] * e / n
        for o, e, n in zip(grid_settings["origin"], extent, n_cells)
    ]
    units = unit_system(config)
    grid = make_grid(grid_settings["dim"], origin, extent, n_cells, units)
    time_settings = config.section("time")
    time_grid = make_time_grid(time_settings["t0"], time_settings["dt"], time_settings["n_steps"])

    physics = config.section("physics")
    constants = PhysicalConstants.from_speed(physics["rho"], physics["c_s"], physics["T1"])

    forcing_settings = config.section("forcing")
    switch_off = forcing_settings["switch_off_time"]
    common = {
        "normal_dir": np.asarray(forcing_settings["normal_dir"], dtype=float),
        "reference_area": forcing_settings["reference_area"],
        "switch_off_time": switch_off if switch_off >= 0 else None,
    }
    try:
        match forcing_settings["mode"]:
            case "uniform":
                forcing = ForcingSpec.uniform(forcing_settings["value"], **common)
            case "wave":
                wave = WaveForcingParams(**config.section("wave"))
                forcing = ForcingSpec.analytic(wave, **common)
            case "table":
                table = read_field_csv(forcing_settings["table_path"], "f", units)
                forcing = ForcingSpec.tabulated(table, **common)
    except ValueError as error:
        raise ConfigError(f"forcing: {error}") from error

    initial_kind, initial_params = _profile(config.section("initial"))
    initial_u = make_profile(initial_kind, grid, time_grid.t0, **initial_params)

    boundary_settings = config.section("boundary")
    if boundary_settings["kind"] == "prescribed_trace":
        trace_kind, trace_params = _profile(boundary_settings)
        boundary = BoundarySpec(
            BoundaryKind.PRESCRIBED_TRACE,
            make_profile_field(trace_kind, grid, time_grid, "trace", **trace_params),
        )
    else:
        boundary = BoundarySpec()

    return ObstacleProblemSpec(
        grid=grid,
        time_grid=time_grid,
        constants=constants,
        forcing=forcing,
        boundary=boundary,
        initial_u=initial_u,
        u_scale=physics["u_scale"],
        normalization=NormalizationRecord.identity() if units == UnitSystem.NORMALIZED else None,
    )


def normalization_record(spec: ObstacleProblemSpec) -> NormalizationRecord:
    """Scales between the units of spec and the normalized problem."""
    if spec.is_normalized:
        return spec.normalization
    return NormalizationRecord.from_constants(spec.constants, spec.u_scale)


def psor_settings(config: RunConfig) -> PsorSettings:
    solver = config.section("solver")
    return PsorSettings(
        omega=solver["omega"], max_iters=int(solver["max_iters"]), tol=solver["tol"]
    )


def wave_scheme(config: RunConfig) -> WaveScheme:
    return WaveScheme[config.get("solver.scheme").upper()]


def charge_scale_params(config: RunConfig) -> ChargeScaleParams:
    try:
        return ChargeScaleParams(**config.section("scales"))
    except (TypeError, ValueError) as error:
        raise ConfigError(f"scales: {error}") from error
