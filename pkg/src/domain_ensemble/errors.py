"""Exception types raised by the ensemble routines."""


class EnsembleError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(EnsembleError, ValueError):
    """A parameter is non-finite, of the wrong type, or violates a precondition."""


class OutOfRangeError(EnsembleError, ValueError):
    """A requested charge or mean lies outside the attainable open interval."""


class InfeasibleError(EnsembleError, ValueError):
    """No probability vector satisfies the requested constraints."""


class ConvergenceError(EnsembleError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class ConfigError(EnsembleError, ValueError):
    """A domain configuration document is malformed."""
