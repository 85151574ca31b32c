"""Exception and warning types shared across the package."""


class LogKdvError(Exception):
    """Base class for all package-specific errors."""


class GridError(LogKdvError):
    """A grid does not satisfy the preconditions of an operation."""


class TruncationError(LogKdvError):
    """A half-line quantity has not decayed at the domain truncation.

    Carries the offending tail magnitude in ``tail``.
    """

    def __init__(self, message, tail):
        super().__init__(f"{message} (tail magnitude {tail:.3e})")
        self.tail = tail


class UnsupportedOrderError(LogKdvError):
    """A series was requested beyond the implemented truncation order."""


class DegenerateFitError(LogKdvError):
    """The data in a fit window is below the noise floor."""


class NormalizationError(LogKdvError):
    """A mode set is not orthonormal to the required tolerance."""


class ConstraintViolationError(LogKdvError):
    """Input violates a constraint-space precondition."""


class RealityViolationError(LogKdvError):
    """A reconstruction that should be real has a large imaginary part."""


class DivergenceError(LogKdvError):
    """A time evolution produced non-finite values.

    ``step`` is the index of the first offending step.
    """

    def __init__(self, message, step):
        super().__init__(f"{message} at step {step}")
        self.step = step


class SolverError(LogKdvError):
    """A linear or eigenvalue solver failed; carries solver context."""


class UsageError(LogKdvError):
    """An invalid configuration value; names the offending field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class BoundaryWarning(UserWarning):
    """A field has non-negligible amplitude near the domain boundary."""


class CFLWarning(UserWarning):
    """The advective stability estimate for an explicit substep is violated."""
