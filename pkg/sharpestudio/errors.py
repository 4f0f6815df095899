"""
SharpeStudio Errors

Exception hierarchy shared by the library and the command-line interface.
Each error carries the exit code the CLI uses when it reaches the top level.
"""


class SharpeStudioError(Exception):
    """Base class for every error raised by sharpestudio."""

    exit_code: int = 1


class DomainError(SharpeStudioError, ValueError):
    """An argument lies outside the domain of the requested function."""


class ConvergenceError(SharpeStudioError, RuntimeError):
    """An iterative method ran out of iterations before reaching its tolerance."""


class SeriesParseError(SharpeStudioError, ValueError):
    """The input file could not be parsed into an observation series."""

    exit_code = 2

    def __init__(self, message: str, row: int | None = None) -> None:
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class DegenerateSeriesError(SharpeStudioError, ValueError):
    """The series cannot be tested (zero variance or too few observations)."""

    exit_code = 3


class UnreachableConfidenceError(DomainError):
    """The requested confidence cannot be reached with the given number of observations."""


class TableSpecError(DomainError):
    """A table specification is inconsistent (empty or unsorted grids, bad target)."""


class VerificationError(SharpeStudioError):
    """A reported number disagrees with its independent recomputation."""
