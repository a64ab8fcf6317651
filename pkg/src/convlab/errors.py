"""Exception types shared across the package."""


class ConvlabError(Exception):
    """Base class for all package errors."""


class RepresentationError(ConvlabError):
    """A random variable's piecewise representation is malformed, or an
    operation would leave the supported representation class."""


class ParameterError(ConvlabError):
    """An argument is outside its declared range."""


class AccuracyError(ConvlabError):
    """Quadrature could not meet the requested tolerance.  Carries the best
    available estimate and its error bound."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
