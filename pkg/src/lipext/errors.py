"""Exception types shared across the package.

The CLI maps these onto process exit codes, so new error conditions should
reuse one of the classes below rather than raising bare ValueError.
"""


class LipextError(Exception):
    """Base class for all package-specific errors."""


class ParseError(LipextError, ValueError):
    """Malformed input file or spec string; carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionMismatchError(LipextError, ValueError):
    """A point does not have the number of coordinates the metric expects."""


class DataConflictError(LipextError, ValueError):
    """Coincident points carry different values, so no function fits the data."""

    def __init__(self, message, conflicts=()):
        self.conflicts = tuple(conflicts)
        super().__init__(message)


class SigmaTooSmallError(LipextError, ValueError):
    """Requested Lipschitz bound lies below the empirical constant of the samples."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class BoundViolationError(LipextError, ValueError):
    """A declared bound on |f| is violated at a sample point."""


class DegenerateInputError(LipextError, ValueError):
    """Input is structurally unusable: empty sample set, zero-distance pair, degenerate basis, bad parameter."""
