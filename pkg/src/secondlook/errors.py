"""Exception types shared across the package."""


class ModelError(ValueError):
    """Base class for all validation and domain errors raised by this package."""


class InvalidProbabilityError(ModelError):
    """A probability argument is NaN or outside [0, 1]."""


class ParameterError(ModelError):
    """A model parameter violates its constraints (precisions, payoffs, cost)."""


class OrderingError(ModelError):
    """A pair of priors was passed in the wrong order."""


class ExtremeBeliefError(ModelError):
    """An operation that requires a non-extreme prior received an extreme one."""


class IndifferentPriorError(ModelError):
    """An operation that requires a favored state received the prior 1/2."""


class UnknownPatternError(ModelError):
    """An unrecognized belief-pattern identifier."""


class ConfigError(ModelError):
    """A run-configuration file failed to parse or validate.

    Carries the source name and 1-based line number when known.
    """

    def __init__(self, message, source=None, line=None):
        self.source = source
        self.line = line
        if source is not None and line is not None:
            message = f"{source}:{line}: {message}"
        elif source is not None:
            message = f"{source}: {message}"
        super().__init__(message)
