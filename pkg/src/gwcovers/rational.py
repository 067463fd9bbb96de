"""Text form of exact rationals: ``"p/q"`` or ``"p"``, sign on the numerator."""

from __future__ import annotations

import re
from fractions import Fraction

from gwcovers.errors import ParseError

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def format_rational(q: Fraction | int) -> str:
    return str(Fraction(q))


def parse_rational(text: str | int, where: str | None = None) -> Fraction:
    """Strict parser; rejects floats, zero denominators and stray signs."""
    if isinstance(text, bool):
        raise ParseError(f"expected a rational, got {text!r}", where)
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}", where)
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"malformed rational {text!r}", where)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", where)
    return Fraction(num, den)
