"""Multiplicities ``k1``, ``k2`` of a curve contracting to a cD4 point, read off an arc.

The threefold is the pullback of the partial-resolution family along an arc
``t -> (x1(t), x2(t), x3(t), x4(t))``. In these coordinates the two
curve-carrying discriminant components are

    D1: (x2^2 + x2 x3 + x4^2)^2 + x1^2 (x1^2 x4^2 - 4 x2 x4^2 - x3 x4^2 - x3 x2^2) = 0
    D2: x1 = 0

and ``k_i`` is the intersection multiplicity of the arc with ``D_i`` at the
origin, i.e. the valuation of the pulled-back equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gwcovers.errors import IdentityMismatch, NotSmooth, TruncationExceeded
from gwcovers.multicover import embedded_contribution
from gwcovers.series import SparsePoly, TruncatedSeries, series_mul, substitute, valuation

DEFAULT_TRUNCATION = 16

__all__ = [
    "ArcMap",
    "CD4Report",
    "DEFAULT_TRUNCATION",
    "Transversality",
    "cd4_report",
    "compute_k1",
    "compute_k2",
    "conic_poly",
    "conic_value",
    "d1_poly",
    "f_transversality_check",
    "smoothness_check",
]


@dataclass(frozen=True)
class ArcMap:
    x1: TruncatedSeries
    x2: TruncatedSeries
    x3: TruncatedSeries
    x4: TruncatedSeries

    def __post_init__(self) -> None:
        truncs = {s.trunc for s in self.coords}
        if len(truncs) != 1:
            raise ValueError(f"arc coordinates disagree on truncation: {sorted(truncs)}")
        for i, s in enumerate(self.coords, 1):
            if s.terms and s.terms[0][0] == 0:
                raise ValueError(f"x{i}(t) must vanish at t = 0")

    @property
    def coords(self) -> tuple[TruncatedSeries, ...]:
        return (self.x1, self.x2, self.x3, self.x4)

    @property
    def trunc(self) -> int:
        return self.x1.trunc

    @classmethod
    def from_coeffs(cls, coords: Sequence[dict[int, Fraction | int]], trunc: int = DEFAULT_TRUNCATION) -> ArcMap:
        """Build from four ``{exponent: coefficient}`` maps sharing ``trunc``."""
        if len(coords) != 4:
            raise ValueError("an arc has exactly four coordinates")
        return cls(*(TruncatedSeries.from_coeffs(c, trunc) for c in coords))

    def with_truncation(self, trunc: int) -> ArcMap:
        """Same known terms, reinterpreted modulo ``t**trunc``."""
        return ArcMap(
            *(TruncatedSeries(tuple(x for x in s.terms if x[0] < trunc), trunc) for s in self.coords)
        )


_x1, _x2, _x3, _x4 = (SparsePoly.var(i) for i in range(1, 5))


def conic_poly() -> SparsePoly:
    return _x2**2 + _x2 * _x3 + _x4**2


def d1_poly() -> SparsePoly:
    return conic_poly() ** 2 + _x1**2 * (
        _x1**2 * _x4**2 - 4 * _x2 * _x4**2 - _x3 * _x4**2 - _x3 * _x2**2
    )


def smoothness_check(arc: ArcMap) -> bool:
    """True iff ``x2``, ``x3``, ``x4`` each vanish to order exactly one."""
    return all(valuation(s) == 1 for s in (arc.x2, arc.x3, arc.x4))


def _require_smooth(arc: ArcMap) -> None:
    if not smoothness_check(arc):
        orders = []
        for s in (arc.x2, arc.x3, arc.x4):
            orders.append(str(s.low) if s.terms else f">={s.trunc}")
        raise NotSmooth(
            "x2, x3, x4 must vanish to order exactly 1; got orders " + ", ".join(orders)
        )


def conic_value(arc: ArcMap) -> Fraction:
    """``c2^2 + c2 c3 + c4^2`` on the linear coefficients of ``x2, x3, x4``."""
    _require_smooth(arc)
    c2, c3, c4 = (s.coeff(1) for s in (arc.x2, arc.x3, arc.x4))
    return c2 * c2 + c2 * c3 + c4 * c4


def compute_k2(arc: ArcMap) -> int:
    _require_smooth(arc)
    return valuation(arc.x1)


def d1_along(arc: ArcMap) -> TruncatedSeries:
    return substitute(d1_poly(), arc.coords)


def compute_k1(arc: ArcMap) -> int:
    """Valuation of ``D1`` pulled back along the arc.

    Equals the multiplicity ``k1`` when the arc is generic (nonzero conic
    value); otherwise it is only the raw order of contact.
    """
    _require_smooth(arc)
    return valuation(d1_along(arc))


@dataclass(frozen=True)
class Transversality:
    valuation: int
    bound: int
    transverse: bool
    # True when the product vanished to the working precision and
    # ``valuation`` is only the truncation order.
    lower_bound_only: bool = False


def _f_along_x2(arc: ArcMap) -> TruncatedSeries:
    """``F(z, t)`` evaluated at ``z = x2(t)``, straight from the product form of ``F``."""
    z = arc.x2
    first = (z - arc.x2) ** 2 + series_mul(arc.x1**2, z)
    second = z**2 + series_mul(arc.x3, z) + arc.x4**2
    return series_mul(first, second)


def _agree(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    t = min(a.trunc, b.trunc)
    return a.truncate(t).terms == b.truncate(t).terms


def f_transversality_check(arc: ArcMap) -> Transversality:
    """Order of ``x1^2 x2 (x2^2 + x2 x3 + x4^2)`` against its floor ``2 k2 + 3``.

    The product is cross-checked against ``F(x2(t), t)`` computed
    independently; a disagreement raises :class:`IdentityMismatch`.
    """
    k2 = compute_k2(arc)
    bound = 2 * k2 + 3
    conic = substitute(conic_poly(), arc.coords)
    product = series_mul(series_mul(arc.x1**2, arc.x2), conic)
    if not _agree(product, _f_along_x2(arc)):
        raise IdentityMismatch("F(x2(t), t) differs from x1^2 x2 (x2^2 + x2 x3 + x4^2)")
    if not product.terms:
        if product.trunc <= bound:
            raise TruncationExceeded(product.trunc)
        return Transversality(product.trunc, bound, False, lower_bound_only=True)
    v = valuation(product)
    if v < bound:
        raise IdentityMismatch(f"order {v} is below the floor 2*k2+3 = {bound}")
    return Transversality(v, bound, v == bound)


@dataclass(frozen=True)
class CD4Report:
    k2: int
    k1: int
    conic_value: Fraction
    generic: bool
    smooth: bool
    transversality: Transversality
    d1_series: TruncatedSeries
    genus: int = 0
    contributions: dict[int, Fraction] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def k1_certified(self) -> bool:
        return self.generic


def cd4_report(arc: ArcMap, genus: int = 0, max_degree: int = 2) -> CD4Report:
    _require_smooth(arc)
    k2 = compute_k2(arc)
    series = d1_along(arc)
    k1 = valuation(series)
    cv = conic_value(arc)
    generic = cv != 0
    trans = f_transversality_check(arc)
    notes: list[str] = []
    contributions = None
    if generic:
        contributions = {
            d: embedded_contribution(genus, d, [k1, k2]) for d in range(1, max_degree + 1)
        }
    else:
        notes.append(
            "non-generic: linear coefficients lie on the conic; "
            "k1 is the valuation of D1 along the arc, not a certified multiplicity"
        )
        notes.append("contributions suppressed for non-generic arc")
    return CD4Report(
        k2=k2,
        k1=k1,
        conic_value=cv,
        generic=generic,
        smooth=True,
        transversality=trans,
        d1_series=series,
        genus=genus,
        contributions=contributions,
        notes=notes,
    )
