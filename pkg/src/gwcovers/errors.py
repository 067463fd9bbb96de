"""Exception hierarchy.

Everything raised on purpose derives from :class:`CoverError`, which the CLI
maps to exit status 1.
"""

from __future__ import annotations


class CoverError(Exception):
    """Base class for domain errors."""


class UnknownKind(CoverError, ValueError):
    pass


class MarkedOutOfRange(CoverError, ValueError):
    pass


class NotAContractionCase(CoverError, ValueError):
    pass


class IrreducibilityViolation(CoverError, RuntimeError):
    pass


class MissingDegree(CoverError, KeyError):
    def __init__(self, degree: int) -> None:
        super().__init__(degree)
        self.degree = degree

    def __str__(self) -> str:
        return f"missing degree {self.degree}"


class NotSmooth(CoverError, ValueError):
    pass


class TruncationExceeded(CoverError, ArithmeticError):
    """A series is zero up to its truncation order; retry with a larger one."""

    def __init__(self, truncation: int) -> None:
        super().__init__(truncation)
        self.truncation = truncation

    def __str__(self) -> str:
        return f"series vanishes up to t^{self.truncation}; raise the truncation"


class IdentityMismatch(CoverError, AssertionError):
    pass


class IndexOutOfRange(CoverError, IndexError):
    pass


class ParseError(CoverError, ValueError):
    """Malformed input; ``where`` names the offending field or line."""

    def __init__(self, message: str, where: str | None = None) -> None:
        super().__init__(message)
        self.where = where

    def __str__(self) -> str:
        msg = self.args[0]
        return f"{self.where}: {msg}" if self.where else msg


class SchemaError(ParseError):
    pass
