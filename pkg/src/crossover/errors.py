"""Exception hierarchy shared by every module."""


class CrossoverError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(CrossoverError, ValueError):
    """An input violates a documented precondition."""


class SolverError(CrossoverError, ArithmeticError):
    """A linear system could not be solved (singular or non-finite)."""


class ConsistencyError(CrossoverError):
    """Inputs that must belong together do not (e.g. a foreign steady state)."""


class NumericalError(CrossoverError, ArithmeticError):
    """An iterative refinement did not reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ConfigError(CrossoverError, ValueError):
    """A configuration file could not be parsed or validated."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
