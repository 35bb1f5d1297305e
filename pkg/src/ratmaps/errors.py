"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class RatMapsError(Exception):
    """Base class for every error raised by ratmaps."""


class RingMismatchError(RatMapsError, ValueError):
    """Operands live in different rings (or orders)."""


class NotHomogeneousError(RatMapsError, ValueError):
    """A polynomial has terms of different (bi)degrees."""


class ZeroPolynomialError(RatMapsError, ValueError):
    """The zero polynomial was given where a degree or divisor is needed."""


class InvalidMapError(RatMapsError, ValueError):
    """A list of forms does not define a rational map between the given varieties.

    ``index`` names the offending form when there is one.
    """

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(message)


class NotBirationalError(RatMapsError):
    """An inverse was requested for a map that is not birational onto its target."""


class StepLimitExceeded(RatMapsError):
    """The Simis escalation ran past its stage limit without certifying the rank."""


class UnsupportedError(RatMapsError, ValueError):
    """The input is outside what the algorithms support (e.g. a non-domain source)."""


class ParseError(RatMapsError, ValueError):
    """Script text could not be parsed; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")
