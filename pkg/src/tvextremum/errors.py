"""Exception hierarchy shared by all modules."""


class TVExtremumError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(TVExtremumError, ValueError):
    """Vectors have mismatched or empty lengths."""


class InvalidProbabilityError(TVExtremumError, ValueError):
    """Entries are negative, exceed one, or do not sum to one."""


class InvalidSignedMeasureError(TVExtremumError, ValueError):
    """Entries of a signed vector do not sum to zero."""


class DomainError(TVExtremumError, ValueError):
    """A budget lies outside the domain of the requested problem."""


class InfeasibleError(TVExtremumError):
    """No probability vector satisfies the constraints."""


class NonterminationError(TVExtremumError, RuntimeError):
    """The simplex method exceeded its pivot budget."""


class SweepError(TVExtremumError):
    """A sweep point failed; ``budget`` names the offending grid value."""

    def __init__(self, budget: float, cause: Exception):
        super().__init__(f"budget {budget!r}: {cause}")
        self.budget = budget
        self.cause = cause
