"""Exception hierarchy shared across the package."""


class EqualAreaError(Exception):
    """Base class for every error raised by :mod:`eqarea`."""


class ConfigurationError(EqualAreaError, ValueError):
    """Invalid flux, profile or run configuration."""


class NumericalError(EqualAreaError):
    """A numerical procedure could not produce a valid result."""


class MalformedFoldError(NumericalError):
    """Significant points or lobe brackets are inconsistent with the curve."""


class NonTerminationError(NumericalError):
    """The cutting loop performed more cuts than the fold structure allows."""


class UnmatchedShockError(NumericalError):
    """Shocks could not be matched across neighbouring time slices."""
