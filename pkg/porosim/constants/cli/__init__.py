from porosim.constants.cli.cli_constants import Command, ExitCode
