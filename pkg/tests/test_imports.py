import porosim
from porosim import analysis, cli, forcing, geometry, oracle, solvers
from porosim.constants.analysis import BlowupKind, PointLabel
from porosim.constants.cli import Command, ExitCode
from porosim.constants.cli.scenario_constants import SCENARIO_DICT


def test_public_packages_import():
    version: str = porosim.__version__
    assert version.count(".") == 2, "Version is major.minor.patch."

    for package in (analysis, cli, forcing, geometry, oracle, solvers):
        assert package.__name__.startswith("porosim."), f"{package} is not a porosim package."


def test_enums_carry_docstrings():
    for enum in (Command, ExitCode, PointLabel, BlowupKind):
        for member in enum:
            assert member.__doc__, f"{enum.__name__}.{member.name} has no description."

    command: Command = Command("scale-report")
    assert command == Command.SCALE_REPORT, "Commands are looked up by their CLI name."
    assert ExitCode.CONFIG_ERROR.value == 2, "Configuration errors exit with status 2."


def test_every_scenario_loads():
    for name in SCENARIO_DICT:
        config: cli.RunConfig = cli.load_config(name)
        assert config.scenario == name, f"Scenario {name} lost its name."
        spec = cli.to_problem_spec(config)
        assert spec.grid.dim == config.get("grid.dim"), f"Scenario {name} changed dimension."
