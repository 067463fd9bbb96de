"""Exact-arithmetic multiple-cover computations for rational curves in CY threefolds."""

from gwcovers.errors import (
    CoverError,
    IdentityMismatch,
    IndexOutOfRange,
    IrreducibilityViolation,
    MarkedOutOfRange,
    MissingDegree,
    ParseError,
    SchemaError,
    NotAContractionCase,
    NotSmooth,
    TruncationExceeded,
    UnknownKind,
)

__version__ = "0.1.0"

__all__ = [
    "CoverError",
    "IdentityMismatch",
    "IndexOutOfRange",
    "IrreducibilityViolation",
    "MarkedOutOfRange",
    "MissingDegree",
    "ParseError",
    "SchemaError",
    "NotAContractionCase",
    "NotSmooth",
    "TruncationExceeded",
    "UnknownKind",
]
