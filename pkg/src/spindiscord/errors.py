"""Exception types shared across the package."""


class SpinDiscordError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SpinDiscordError, ValueError):
    """A parameter is out of range or a specification is malformed."""


class NumericsError(SpinDiscordError, ArithmeticError):
    """A numerical guard tripped: corrupted input, degenerate spectrum,
    or an eigensolver failure.  These indicate upstream bugs, not user
    error, and are never silently absorbed."""


class NoMaximumError(SpinDiscordError, RuntimeError):
    """A time scan found no significant local maximum in its window."""
