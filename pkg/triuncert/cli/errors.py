from enum import IntEnum

from ..errors import (
    ConvergenceFailureError,
    InternalConsistencyError,
    TripleUncertaintyError,
)


class ExitCode(IntEnum):
    OK = 0
    FAILURES = 1
    INPUT_ERROR = 2
    ENTANGLED = 3


def exit_code_for(ex: TripleUncertaintyError) -> ExitCode:
    # Numerical breakdowns are failures of the run, everything else is bad input.
    if isinstance(ex, (ConvergenceFailureError, InternalConsistencyError)):
        return ExitCode.FAILURES
    return ExitCode.INPUT_ERROR
