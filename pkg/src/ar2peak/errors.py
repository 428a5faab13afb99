"""Exception hierarchy shared by all modules."""


class AR2PeakError(Exception):
    """Base class for package errors."""


class DomainError(AR2PeakError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class NoInteriorPeakError(DomainError):
    """The AR(2) polynomial has no complex root pair, so the density has no
    peak strictly inside (0, pi)."""


class PeakAtBoundaryError(DomainError):
    """The arccos argument of the peak formula leaves [-1, 1], i.e. the
    density is maximal at 0 or pi."""

    def __init__(self, message, argument):
        super().__init__(message)
        self.argument = argument


class ConfigurationError(DomainError):
    """An invalid simulation or study configuration."""


class NumericError(AR2PeakError, ArithmeticError):
    """A numerical routine failed to reach its accuracy target."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ParseError(AR2PeakError, ValueError):
    """Malformed input file."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
