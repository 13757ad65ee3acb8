"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit-specific failures."""


class IntegrabilityError(ToolkitError):
    """A radial density is not integrable (tail integral diverges)."""


class QuadratureError(ToolkitError):
    """A quadrature did not converge to the requested accuracy.

    Carries the last two estimates and, where available, the offending
    point so the caller can locate the problem region.
    """

    def __init__(self, msg, last_estimates=None, where=None):
        super().__init__(msg)
        self.last_estimates = last_estimates
        self.where = where


class NotInClassError(ToolkitError):
    """A weight or scale function fails a required class membership check."""


class EnvelopeError(NotInClassError):
    """No finite logarithmic growth envelope could be fitted."""


class ParameterError(ToolkitError, ValueError):
    """An argument is outside its documented domain."""


class DegenerateInputError(ToolkitError):
    """An input makes the requested quantity undefined (e.g. zero denominator)."""


class TruncationError(ToolkitError):
    """A series truncation cannot meet its tail bound within the degree cap."""

    def __init__(self, msg, tail_bound=None):
        super().__init__(msg)
        self.tail_bound = tail_bound


class ConfigError(ToolkitError):
    """A scenario configuration file could not be parsed."""

    def __init__(self, msg, line=None):
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)
        self.line = line
