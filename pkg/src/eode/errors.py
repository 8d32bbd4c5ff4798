"""Exceptions shared across the package."""


class EodeError(Exception):
    """Base class for package errors."""


class BudgetExhausted(EodeError):
    """Raised when an objective evaluation is requested at the FE cap."""


class DimensionMismatch(EodeError):
    """Point length does not match the problem dimension."""


class UnknownProblem(EodeError):
    """Problem index outside 1..20."""


class DimensionTooHigh(EodeError):
    """Grid oracle requested for a dimension it cannot enumerate."""


class EmptyRuns(EodeError):
    """PR/SR aggregation over an empty run list."""


class PopulationTooSmall(EodeError):
    """Nearest-better tree needs at least two individuals."""


class EmptySuccessSet(EodeError):
    """Weighted mean of an empty success set."""


class TooFewMembers(EodeError):
    """Statistic needs at least two members."""
