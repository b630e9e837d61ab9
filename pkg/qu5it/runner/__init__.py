from qu5it.runner.cli import main
from qu5it.runner.commands import (
    CommandResult,
    cmd_bench,
    cmd_evolve,
    cmd_resources,
    cmd_signprob,
    cmd_spectrum,
    cmd_verify,
)
from qu5it.runner.verify import CheckResult, run_suite
