from __future__ import annotations


EXIT_INPUT = 2
EXIT_RUNTIME = 3


class LinkPredError(Exception):
    """Base class for every error the CLI maps to an exit code."""

    exit_code: int = EXIT_RUNTIME


class InputError(LinkPredError):
    exit_code = EXIT_INPUT


class GraphParseError(InputError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        location = ""
        if path is not None and line is not None:
            location = f"{path}:{line}: "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")


class EmptyGraphError(InputError):
    pass


class UsageError(InputError):
    pass


class InconsistentResultsError(InputError):
    pass


class InfeasiblePlanError(InputError):
    pass


class NumericError(LinkPredError):
    exit_code = EXIT_RUNTIME


class UndefinedMetricError(NumericError):
    pass
