from porosim.cli.config import RunConfig, load_config, to_problem_spec
from porosim.cli.validate import CheckResult, run_validation
from porosim.cli.main import main
