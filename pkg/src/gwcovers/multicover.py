"""Multiple-cover contributions and the genus-0 instanton inversion.

All scalars are :class:`fractions.Fraction`; nothing here touches floats.
Tables are restricted to a single ray ``beta = d[C]`` and keyed by the
positive integer degree ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping, Sequence

from gwcovers.errors import MissingDegree

__all__ = [
    "GWTable",
    "InstantonTable",
    "bernoulli",
    "chain_contribution",
    "cover_coeff",
    "divisors",
    "embedded_contribution",
    "forward_gw",
    "invert_instanton",
    "nodal_contribution",
    "nodal_contribution_conjectural",
]


def divisors(d: int) -> list[int]:
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    small, large = [], []
    n = 1
    while n * n <= d:
        if d % n == 0:
            small.append(n)
            if n * n != d:
                large.append(d // n)
        n += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def _bernoulli(m: int) -> Fraction:
    if m == 0:
        return Fraction(1)
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m
    s = sum(comb(m + 1, j) * _bernoulli(j) for j in range(m))
    return Fraction(-s, m + 1)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number ``B_m`` for even ``m >= 0``.

    The cache is filled idempotently, so concurrent callers can at worst
    duplicate work.
    """
    if m < 0 or m % 2:
        raise ValueError(f"bernoulli() takes an even nonnegative index, got {m}")
    for j in range(0, m, 2):
        _bernoulli(j)  # warm the cache bottom-up to keep recursion shallow
    return _bernoulli(m)


def cover_coeff(g: int, n: int) -> Fraction:
    """Degree-``n`` genus-``g`` multiple-cover contribution of a (-1,-1) curve."""
    if g < 0 or n < 1:
        raise ValueError(f"need g >= 0 and n >= 1, got g={g}, n={n}")
    if g == 0:
        return Fraction(1, n**3)
    num = abs(bernoulli(2 * g)) * Fraction(n) ** (2 * g - 3)
    return num / (2 * g * factorial(2 * g - 2))


def embedded_contribution(g: int, d: int, k: Sequence[int]) -> Fraction:
    """Contribution of degree-``d`` covers of a contractable curve with multiplicities ``k``.

    ``k[i-1]`` is the multiplicity ``k_i``; entries past the end count as 0.
    """
    total = Fraction(0)
    for n in divisors(d):
        i = d // n
        if i <= len(k) and k[i - 1]:
            total += k[i - 1] * cover_coeff(g, n)
    return total


def nodal_contribution(d: int) -> Fraction:
    return sum((Fraction(1, n**3) for n in divisors(d)), Fraction(0))


def nodal_contribution_conjectural(g: int, d: int) -> Fraction:
    """Conjectured genus-``g`` contribution of a one-nodal rational curve."""
    delta = 1 if g == 1 else 0
    return sum(
        (cover_coeff(g, n) + Fraction(delta, n) for n in divisors(d)), Fraction(0)
    )


def chain_contribution(g: int, degrees: Sequence[int]) -> Fraction:
    if not degrees:
        raise ValueError("degrees must be nonempty")
    if any(d < 1 for d in degrees):
        raise ValueError(f"degrees must be positive, got {list(degrees)}")
    d = degrees[0]
    if any(x != d for x in degrees):
        return Fraction(0)
    return cover_coeff(g, d)


@dataclass(frozen=True)
class GWTable:
    """Genus-0 invariants ``N_d`` for ``d = 1..max_degree``."""

    entries: dict[int, Fraction]

    def __post_init__(self) -> None:
        entries = {int(d): Fraction(v) for d, v in self.entries.items()}
        _check_dense(entries)
        object.__setattr__(self, "entries", dict(sorted(entries.items())))

    @property
    def max_degree(self) -> int:
        return len(self.entries)

    def __getitem__(self, d: int) -> Fraction:
        return self.entries[d]


@dataclass(frozen=True)
class InstantonTable:
    entries: dict[int, Fraction]
    integral: dict[int, bool] = field(init=False)

    def __post_init__(self) -> None:
        entries = {int(d): Fraction(v) for d, v in sorted(self.entries.items())}
        object.__setattr__(self, "entries", entries)
        object.__setattr__(
            self, "integral", {d: v.denominator == 1 for d, v in entries.items()}
        )

    @property
    def max_degree(self) -> int:
        return max(self.entries, default=0)

    @property
    def all_integral(self) -> bool:
        return all(self.integral.values())

    def __getitem__(self, d: int) -> Fraction:
        return self.entries[d]


def _check_dense(entries: Mapping[int, object]) -> None:
    if any(d < 1 for d in entries):
        raise ValueError(f"degrees must be positive, got {min(entries)}")
    top = max(entries, default=0)
    for d in range(1, top + 1):
        if d not in entries:
            raise MissingDegree(d)


def forward_gw(n: Mapping[int, Fraction | int] | InstantonTable, max_degree: int) -> GWTable:
    """``N_d = sum_{m | d} n_{d/m} / m^3`` for ``d <= max_degree``."""
    table = n.entries if isinstance(n, InstantonTable) else n
    for d in range(1, max_degree + 1):
        if d not in table:
            raise MissingDegree(d)
    out = {}
    for d in range(1, max_degree + 1):
        out[d] = sum(
            (Fraction(table[d // m]) / m**3 for m in divisors(d)), Fraction(0)
        )
    return GWTable(out)


def invert_instanton(N: GWTable | Mapping[int, Fraction | int]) -> InstantonTable:
    """Solve the divisor-sum relation for the instanton numbers, degree by degree."""
    entries = N.entries if isinstance(N, GWTable) else {int(d): Fraction(v) for d, v in N.items()}
    _check_dense(entries)
    n: dict[int, Fraction] = {}
    for d in range(1, len(entries) + 1):
        acc = Fraction(entries[d])
        for m in divisors(d)[1:]:
            acc -= n[d // m] / m**3
        n[d] = acc
    return InstantonTable(n)
