"""Truncated power series in ``t`` over the rationals, and sparse polynomials to plug into them.

A :class:`TruncatedSeries` stands for a coset modulo ``t**trunc``: the stored
terms are exact and everything at order ``trunc`` or above is unknown.
Arithmetic only ever shrinks what is claimed known.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gwcovers.errors import TruncationExceeded

Monomial = tuple[int, ...]

__all__ = ["SparsePoly", "TruncatedSeries", "series_add", "series_mul", "series_pow", "substitute", "valuation"]


@dataclass(frozen=True)
class TruncatedSeries:
    terms: tuple[tuple[int, Fraction], ...]
    trunc: int

    def __post_init__(self) -> None:
        if self.trunc < 1:
            raise ValueError(f"truncation order must be >= 1, got {self.trunc}")
        acc: dict[int, Fraction] = {}
        for e, c in self.terms:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if e >= self.trunc:
                raise ValueError(f"exponent {e} not below truncation {self.trunc}")
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        clean = tuple((e, c) for e, c in sorted(acc.items()) if c != 0)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, Fraction | int] | Iterable[tuple[int, Fraction | int]], trunc: int) -> TruncatedSeries:
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        return cls(tuple((int(e), Fraction(c)) for e, c in items), trunc)

    @classmethod
    def one(cls, trunc: int) -> TruncatedSeries:
        return cls(((0, Fraction(1)),), trunc)

    @classmethod
    def zero(cls, trunc: int) -> TruncatedSeries:
        return cls((), trunc)

    def coeff(self, e: int) -> Fraction:
        if e >= self.trunc:
            raise TruncationExceeded(self.trunc)
        return dict(self.terms).get(e, Fraction(0))

    @property
    def low(self) -> int:
        """First exponent that may be nonzero: the valuation, or ``trunc`` if none is known."""
        return self.terms[0][0] if self.terms else self.trunc

    def truncate(self, trunc: int) -> TruncatedSeries:
        t = min(trunc, self.trunc)
        return TruncatedSeries(tuple(x for x in self.terms if x[0] < t), t)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        return series_add(self, other)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple((e, -c) for e, c in self.terms), self.trunc)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return series_add(self, -other)

    def __mul__(self, other: TruncatedSeries | Fraction | int) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        c = Fraction(other)
        return TruncatedSeries(tuple((e, c * x) for e, x in self.terms), self.trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncatedSeries:
        return series_pow(self, k)

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms:
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{body} + O(t^{self.trunc})"


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    trunc = min(a.trunc, b.trunc)
    acc: dict[int, Fraction] = {}
    for e, c in a.terms + b.terms:
        if e < trunc:
            acc[e] = acc.get(e, Fraction(0)) + c
    return TruncatedSeries(tuple(acc.items()), trunc)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    # (A + O(t^Ta)) (B + O(t^Tb)) is known exactly below min(Ta + val B, Tb + val A)
    trunc = min(a.trunc + b.low, b.trunc + a.low)
    acc: dict[int, Fraction] = {}
    for ea, ca in a.terms:
        if ea + b.low >= trunc:
            break
        for eb, cb in b.terms:
            e = ea + eb
            if e >= trunc:
                break
            acc[e] = acc.get(e, Fraction(0)) + ca * cb
    return TruncatedSeries(tuple(acc.items()), trunc)


def series_pow(a: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 0:
        raise ValueError("negative powers are not supported")
    result = TruncatedSeries.one(a.trunc)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def valuation(s: TruncatedSeries) -> int:
    """Order of vanishing at ``t = 0``.

    Raises :class:`TruncationExceeded` when no nonzero coefficient is known.
    """
    if not s.terms:
        raise TruncationExceeded(s.trunc)
    return s.terms[0][0]


@dataclass(frozen=True)
class SparsePoly:
    """Polynomial in ``nvars`` variables, stored as ``{exponent tuple: coefficient}``."""

    coeffs: Mapping[Monomial, Fraction]
    nvars: int = 4

    def __post_init__(self) -> None:
        clean: dict[Monomial, Fraction] = {}
        for mono, c in self.coeffs.items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != self.nvars or any(x < 0 for x in mono):
                raise ValueError(f"bad monomial {mono} for {self.nvars} variables")
            clean[mono] = clean.get(mono, Fraction(0)) + Fraction(c)
        object.__setattr__(
            self, "coeffs", {m: c for m, c in sorted(clean.items()) if c != 0}
        )

    @classmethod
    def var(cls, i: int, nvars: int = 4) -> SparsePoly:
        """The coordinate ``x_i`` (1-based)."""
        return cls({tuple(int(j == i - 1) for j in range(nvars)): Fraction(1)}, nvars)

    @classmethod
    def const(cls, c: Fraction | int, nvars: int = 4) -> SparsePoly:
        return cls({(0,) * nvars: Fraction(c)}, nvars)

    def _lift(self, other: SparsePoly | Fraction | int) -> SparsePoly:
        return other if isinstance(other, SparsePoly) else SparsePoly.const(other, self.nvars)

    def __add__(self, other: SparsePoly | Fraction | int) -> SparsePoly:
        other = self._lift(other)
        acc = dict(self.coeffs)
        for m, c in other.coeffs.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return SparsePoly(acc, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly({m: -c for m, c in self.coeffs.items()}, self.nvars)

    def __sub__(self, other: SparsePoly | Fraction | int) -> SparsePoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: Fraction | int) -> SparsePoly:
        return self._lift(other) - self

    def __mul__(self, other: SparsePoly | Fraction | int) -> SparsePoly:
        other = self._lift(other)
        acc: dict[Monomial, Fraction] = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                acc[m] = acc.get(m, Fraction(0)) + ca * cb
        return SparsePoly(acc, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        out = SparsePoly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.coeffs}

    def homogeneous_part(self, deg: int) -> SparsePoly:
        return SparsePoly({m: c for m, c in self.coeffs.items() if sum(m) == deg}, self.nvars)

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(mono), Fraction(0))


def substitute(p: SparsePoly, xs: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Evaluate ``p(x_1(t), ..., x_n(t))`` with conservative truncation."""
    if len(xs) != p.nvars:
        raise ValueError(f"need {p.nvars} series, got {len(xs)}")
    base_trunc = min(x.trunc for x in xs)
    powers: dict[tuple[int, int], TruncatedSeries] = {}

    def power(i: int, k: int) -> TruncatedSeries:
        if (i, k) not in powers:
            powers[(i, k)] = series_pow(xs[i], k)
        return powers[(i, k)]

    total: TruncatedSeries | None = None
    for mono, c in p.coeffs.items():
        term = TruncatedSeries.one(base_trunc)
        for i, k in enumerate(mono):
            if k:
                term = series_mul(term, power(i, k))
        term = term * c
        total = term if total is None else series_add(total, term)
    return total if total is not None else TruncatedSeries.zero(base_trunc)
