"""
Entry point of the `porosim` command.

    porosim simulate|analyze|validate|scale-report|sweep [--config <path|scenario>]
        [--out <dir>] [--set key=value ...] [--dry-run] [--json] [--filter <name>]

Exit status is 0 on success, 1 when a computation or check fails and 2 for an
invalid configuration. Failures print one line

    error: type=<Name> key=value ... message="<text>"

on stderr.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-09-02
"""

# Python Libraries
from __future__ import annotations
import argparse
import logging
from pathlib import Path
import sys
from typing import Any, Sequence

import toml

# Local Libraries
import porosim
from porosim.cli.commands import cmd_analyze, cmd_scale_report, cmd_simulate, cmd_sweep
from porosim.cli.config import load_config
from porosim.cli.validate import cmd_validate
from porosim.constants.cli import Command, ExitCode
from porosim.constants.cli.cli_constants import DEFAULT_OUTPUT_DIR, ERROR_LINE_PREFIX
from porosim.errors import ConfigError, PorosimError

logger: logging.Logger = logging.getLogger(__name__)


def parse_override(text: str) -> tuple[str, Any]:
    """
    Splits `section.key=value`; the value uses TOML syntax and falls back to a
    plain string.
    """
    key, separator, value = text.partition("=")
    if not separator or not key.strip():
        raise ConfigError(f"Override {text!r} is not of the form section.key=value.")
    try:
        parsed = toml.loads(f"value = {value.strip()}")["value"]
    except toml.TomlDecodeError:
        parsed = value.strip()
    return key.strip(), parsed


def error_line(error: BaseException) -> str:
    details = error.details() if isinstance(error, PorosimError) else {}
    fields = [f"type={type(error).__name__}"]
    fields += [f"{key}={value}" for key, value in details.items() if value is not None]
    message = str(error).replace('"', "'")
    fields.append(f'message="{message}"')
    return f"{ERROR_LINE_PREFIX} " + " ".join(fields)


def _parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="porosim",
        description="Obstacle problem simulator of membrane dimple formation.",
    )
    parser.add_argument("--version", action="version", version=porosim.__version__)
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging threshold of the diagnostics written to stderr.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub = commands.add_parser(command.value, help=command.__doc__)
        sub.add_argument(
            "--config",
            default=None,
            help="TOML file or bundled scenario name. Defaults apply when omitted.",
        )
        sub.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="Dotted setting applied after the configuration, repeatable.",
        )
        match command:
            case Command.SIMULATE | Command.ANALYZE | Command.SWEEP:
                sub.add_argument("--out", type=Path, default=Path(DEFAULT_OUTPUT_DIR))
        match command:
            case Command.SIMULATE:
                sub.add_argument(
                    "--dry-run",
                    action="store_true",
                    help="Print the resolved configuration and stop.",
                )
            case Command.ANALYZE:
                sub.add_argument(
                    "trajectory",
                    nargs="?",
                    type=Path,
                    help="trajectory.csv to analyse; simulated from the configuration if omitted.",
                )
            case Command.VALIDATE:
                sub.add_argument(
                    "--filter", default=None, help="Run only checks whose name contains this."
                )
            case Command.SCALE_REPORT:
                sub.add_argument("--json", action="store_true", help="Print JSON.")
    return parser.parse_args(argv)


def run(args: argparse.Namespace) -> int:
    command = Command(args.command)
    if command == Command.VALIDATE:
        return cmd_validate(args.filter)

    overrides = dict(parse_override(text) for text in args.overrides)
    config = load_config(args.config, overrides)
    match command:
        case Command.SIMULATE:
            return cmd_simulate(config, args.out, args.dry_run)
        case Command.ANALYZE:
            return cmd_analyze(config, args.out, args.trajectory)
        case Command.SCALE_REPORT:
            return cmd_scale_report(config, args.json)
        case Command.SWEEP:
            return cmd_sweep(config, args.out)


def main(argv: Sequence[str] | None = None) -> int:
    args = _parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return run(args)
    except ConfigError as error:
        print(error_line(error), file=sys.stderr)
        return ExitCode.CONFIG_ERROR.value
    except PorosimError as error:
        print(error_line(error), file=sys.stderr)
        return ExitCode.FAILURE.value


if __name__ == "__main__":
    raise SystemExit(main())
