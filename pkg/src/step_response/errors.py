"""Exception hierarchy shared by all modules."""


class StepResponseError(Exception):
    """Base class for errors raised by this package."""


class DomainError(StepResponseError, ValueError):
    """An argument lies outside the declared domain of a function."""

    def __init__(self, message, t=None):
        super().__init__(message if t is None else f"{message} (at t={t!r})")
        self.t = t


class RangeError(StepResponseError, ValueError):
    """A value lies outside the range of a function being inverted."""


class ConfigError(StepResponseError, ValueError):
    """Invalid experiment or CLI configuration."""


class UnsupportedRegimeError(StepResponseError, ValueError):
    """The requested closed form does not exist for the given parameters."""


class NumericalError(StepResponseError, ArithmeticError):
    """An iterative method failed to converge."""


class SingularityError(NumericalError):
    """A denominator vanished (e.g. a zero constitutive derivative)."""


class StiffnessError(NumericalError):
    """The adaptive step size fell below the configured minimum."""

    def __init__(self, t, h, err, stats=None):
        super().__init__(
            f"step size underflow at t={t!r}: h={h:.3e} (last error norm {err:.3e})"
        )
        self.t = t
        self.h = h
        self.err = err
        self.stats = stats
