"""Simply-laced root systems and the W0-orbit structure of discriminant hyperplanes.

Vertices are numbered 1..rank following Bourbaki:

* ``A_n``: chain 1-2-...-n
* ``D_n``: chain 1-...-(n-2), with n-1 and n both attached to n-2
* ``E_n``: chain 1-3-4-...-n, with 2 attached to 4

A root is a tuple of integer coefficients over the simple roots. Since the
hyperplanes v-perp and (-v)-perp coincide, orbit computations run on
``±`` pairs, each represented by its positive member.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gwcovers.errors import (
    IndexOutOfRange,
    IrreducibilityViolation,
    MarkedOutOfRange,
    NotAContractionCase,
    UnknownKind,
)

Root = tuple[int, ...]
Edge = tuple[int, int]

__all__ = [
    "CONTRACTION_CASES",
    "CycleBoundCertificate",
    "CycleBoundResult",
    "DiscriminantReport",
    "MarkedDiagram",
    "Orbit",
    "OrbitDecomposition",
    "Root",
    "RootSystem",
    "Alpha1Check",
    "adjacency_for",
    "build_diagram",
    "contraction_diagrams",
    "discriminant_report",
    "length_of",
    "pairing",
    "parse_kind",
    "positive_roots",
    "propagate_lower_bounds",
    "reflect",
    "resolve_marked",
    "verify_alpha1_invariant",
    "verify_cycle_bound",
    "w0_orbits",
]

_KIND_RE = re.compile(r"^([ADE])(\d+)$")

#: The six (diagram, marked vertex) pairs, in order of increasing length.
CONTRACTION_CASES: tuple[tuple[str, int], ...] = (
    ("A1", 1),
    ("D4", 2),
    ("E6", 4),
    ("E7", 4),
    ("E8", 5),
    ("E8", 4),
)


def parse_kind(kind: str) -> tuple[str, int]:
    """Split ``"E8"`` into ``("E", 8)`` and check the rank is admissible."""
    m = _KIND_RE.match(kind.strip()) if isinstance(kind, str) else None
    if m is None:
        raise UnknownKind(f"unknown diagram kind {kind!r}")
    family, rank = m.group(1), int(m.group(2))
    ok = (
        (family == "A" and rank >= 1)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
    )
    if not ok:
        raise UnknownKind(f"unknown diagram kind {kind!r}")
    return family, rank


def adjacency_for(kind: str) -> tuple[Edge, ...]:
    """Canonical edge list (each edge as ``(small, large)``) for an ADE kind."""
    family, n = parse_kind(kind)
    if family == "A":
        edges = [(i, i + 1) for i in range(1, n)]
    elif family == "D":
        edges = [(i, i + 1) for i in range(1, n - 2)]
        edges += [(n - 2, n - 1), (n - 2, n)]
    else:
        edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, n)]
    return tuple(sorted(edges))


def _is_tree(rank: int, edges: Sequence[Edge]) -> bool:
    if len(edges) != rank - 1:
        return False
    parent = list(range(rank + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


@dataclass(frozen=True)
class MarkedDiagram:
    """An ADE Dynkin diagram together with a marked vertex subset."""

    kind: str
    rank: int
    adjacency: tuple[Edge, ...]
    marked: frozenset[int]

    def __post_init__(self) -> None:
        family, n = parse_kind(self.kind)
        if n != self.rank:
            raise UnknownKind(f"{self.kind} has rank {n}, not {self.rank}")
        edges = tuple(sorted((min(a, b), max(a, b)) for a, b in self.adjacency))
        for a, b in edges:
            if not (1 <= a <= self.rank and 1 <= b <= self.rank) or a == b:
                raise UnknownKind(f"bad edge ({a}, {b}) for {self.kind}")
        if not _is_tree(self.rank, edges):
            raise UnknownKind(f"adjacency of {self.kind} is not a tree")
        if edges != adjacency_for(self.kind):
            raise UnknownKind(f"adjacency does not match the {self.kind} shape")
        object.__setattr__(self, "adjacency", edges)
        if not self.marked:
            raise MarkedOutOfRange("marked vertex set is empty")
        bad = sorted(v for v in self.marked if not 1 <= v <= self.rank)
        if bad:
            raise MarkedOutOfRange(f"marked vertices {bad} outside 1..{self.rank}")

    def neighbors(self, v: int) -> list[int]:
        return sorted(b if a == v else a for a, b in self.adjacency if v in (a, b))

    @property
    def unmarked(self) -> list[int]:
        return [v for v in range(1, self.rank + 1) if v not in self.marked]

    @property
    def is_contraction_case(self) -> bool:
        if len(self.marked) != 1:
            return False
        (v,) = self.marked
        return (self.kind, v) in CONTRACTION_CASES

    @property
    def marked_vertex(self) -> int:
        """The single marked vertex of a contraction case."""
        if not self.is_contraction_case:
            raise NotAContractionCase(
                f"({self.kind}, {sorted(self.marked)}) is not a contraction case"
            )
        return next(iter(self.marked))

    def label(self) -> str:
        return f"{self.kind}/{','.join(map(str, sorted(self.marked)))}"


def build_diagram(kind: str, marked: Iterable[int]) -> MarkedDiagram:
    _, rank = parse_kind(kind)
    return MarkedDiagram(kind, rank, adjacency_for(kind), frozenset(marked))


def resolve_marked(kind: str, token: str | int) -> int:
    """Translate ``"center"`` / ``"adjacent"`` / a vertex number into a vertex."""
    family, n = parse_kind(kind)
    if isinstance(token, int) or str(token).strip().isdigit():
        v = int(token)
        if not 1 <= v <= n:
            raise MarkedOutOfRange(f"vertex {v} outside 1..{n}")
        return v
    token = str(token).strip().lower()
    if token == "center":
        if family == "A" and n == 1:
            return 1
        if family == "D" and n == 4:
            return 2
        if family == "E":
            return 4
        raise MarkedOutOfRange(f"{kind} has no distinguished center vertex")
    if token == "adjacent":
        if kind == "E8":
            return 5
        raise MarkedOutOfRange("'adjacent' is only defined for E8")
    raise MarkedOutOfRange(f"cannot interpret marked vertex {token!r}")


def contraction_diagrams() -> list[MarkedDiagram]:
    return [build_diagram(kind, {v}) for kind, v in CONTRACTION_CASES]


def cartan_matrix(diagram: MarkedDiagram) -> tuple[tuple[int, ...], ...]:
    n = diagram.rank
    rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in diagram.adjacency:
        rows[a - 1][b - 1] = rows[b - 1][a - 1] = -1
    return tuple(tuple(r) for r in rows)


def pairing(u: Sequence[int], v: Sequence[int], cartan: Sequence[Sequence[int]]) -> int:
    """Symmetric bilinear form ``u^T A v``; equals 2 on every root."""
    return sum(u[i] * cartan[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def reflect(v: Sequence[int], i: int, cartan: Sequence[Sequence[int]]) -> Root:
    """Simple reflection ``s_i(v) = v - <v, e_i> e_i`` (``i`` is 1-based)."""
    n = len(cartan)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"simple index {i} outside 1..{n}")
    k = i - 1
    c = sum(v[j] * cartan[j][k] for j in range(n))
    out = list(v)
    out[k] -= c
    return tuple(out)


def _positive_rep(v: Root) -> Root:
    return v if any(x > 0 for x in v) else tuple(-x for x in v)


@dataclass(frozen=True)
class RootSystem:
    diagram: MarkedDiagram
    cartan: tuple[tuple[int, ...], ...]
    positives: tuple[Root, ...]

    def __len__(self) -> int:
        return len(self.positives)

    @property
    def highest_root(self) -> Root:
        return max(self.positives, key=sum)


def positive_roots(diagram: MarkedDiagram) -> RootSystem:
    """Positive roots by breadth-first reflection closure from the simple roots."""
    cartan = cartan_matrix(diagram)
    n = diagram.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen: set[Root] = set(simple)
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for i in range(1, n + 1):
            w = reflect(v, i, cartan)
            if all(x >= 0 for x in w) and w not in seen:
                seen.add(w)
                queue.append(w)
    return RootSystem(diagram, cartan, tuple(sorted(seen)))


@dataclass(frozen=True)
class Orbit:
    """One W0-orbit of ``±`` root pairs.

    ``alpha1`` is the coefficient of the (first) marked vertex, which W0
    leaves unchanged. ``members`` holds the positive representatives.
    """

    alpha1: int
    members: tuple[Root, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrbitDecomposition:
    root_system: RootSystem
    orbits: tuple[Orbit, ...]

    def by_alpha1(self) -> dict[int, list[Orbit]]:
        out: dict[int, list[Orbit]] = {}
        for orb in self.orbits:
            out.setdefault(orb.alpha1, []).append(orb)
        return dict(sorted(out.items()))


def w0_orbits(rs: RootSystem) -> OrbitDecomposition:
    """Partition the ``±`` root pairs into orbits under reflections in unmarked roots."""
    diagram = rs.diagram
    gens = diagram.unmarked
    first_marked = min(diagram.marked) - 1
    assigned: set[Root] = set()
    orbits: list[Orbit] = []
    for start in rs.positives:
        if start in assigned:
            continue
        members = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for i in gens:
                w = _positive_rep(reflect(v, i, rs.cartan))
                if w not in members:
                    members.add(w)
                    queue.append(w)
        assigned |= members
        orbits.append(Orbit(abs(start[first_marked]), tuple(sorted(members))))
    orbits.sort(key=lambda o: (o.alpha1, o.members))
    return OrbitDecomposition(rs, tuple(orbits))


@dataclass(frozen=True)
class Alpha1Check:
    diagram: MarkedDiagram
    verified: bool
    counterexample: tuple[Root, Root] | None = None
    reason: str = ""


def _require_contraction(diagram: MarkedDiagram) -> int:
    return diagram.marked_vertex


def verify_alpha1_invariant(diagram: MarkedDiagram) -> Alpha1Check:
    """Exhaustively check that the marked coefficient is a complete orbit invariant.

    Forward: every orbit has a single marked-coefficient magnitude.
    Converse: two roots sharing a nonzero marked coefficient share an orbit.
    """
    k = _require_contraction(diagram) - 1
    dec = w0_orbits(positive_roots(diagram))
    orbit_of: dict[Root, int] = {}
    for idx, orb in enumerate(dec.orbits):
        for v in orb.members:
            orbit_of[v] = idx
        for v in orb.members:
            if abs(v[k]) != abs(orb.members[0][k]):
                return Alpha1Check(diagram, False, (orb.members[0], v), "orbit not constant")
    first_with: dict[int, Root] = {}
    for v in dec.root_system.positives:
        a = abs(v[k])
        if a == 0:
            continue
        u = first_with.setdefault(a, v)
        if orbit_of[u] != orbit_of[v]:
            return Alpha1Check(diagram, False, (u, v), "equal coefficient, different orbits")
    return Alpha1Check(diagram, True)


def length_of(diagram: MarkedDiagram) -> int:
    """Largest marked coefficient over the positive roots."""
    k = _require_contraction(diagram) - 1
    return max(v[k] for v in positive_roots(diagram).positives)


@dataclass(frozen=True)
class DiscriminantReport:
    diagram: MarkedDiagram
    length: int
    curv_components: dict[int, int]
    sing_components: int
    sing_sizes: tuple[int, ...] = ()


def discriminant_report(diagram: MarkedDiagram) -> DiscriminantReport:
    _require_contraction(diagram)
    dec = w0_orbits(positive_roots(diagram))
    groups = dec.by_alpha1()
    sing = groups.pop(0, [])
    length = max(groups)
    curv: dict[int, int] = {}
    for i in range(1, length + 1):
        orbs = groups.get(i, [])
        if len(orbs) != 1:
            raise IrreducibilityViolation(
                f"{diagram.label()}: {len(orbs)} orbits with marked coefficient {i}"
            )
        curv[i] = len(orbs[0])
    return DiscriminantReport(
        diagram, length, curv, len(sing), tuple(len(o) for o in sing)
    )


def propagate_lower_bounds(
    diagram: MarkedDiagram, order: int, cap: int | None = None
) -> tuple[int, ...] | None:
    """Least integer solution of the subadditivity inequalities with m_marked >= order.

    Iterates ``lb_k <- max(lb_k, ceil(sum of neighbouring lb / 2))`` over
    unmarked vertices until nothing changes. Returns ``None`` if some bound
    exceeds ``cap``.
    """
    lb = [0] * (diagram.rank + 1)
    for v in diagram.marked:
        lb[v] = order
    nbrs = {k: diagram.neighbors(k) for k in diagram.unmarked}
    changed = True
    while changed:
        changed = False
        for k, ns in nbrs.items():
            need = -(-sum(lb[j] for j in ns) // 2)
            if need > lb[k]:
                lb[k] = need
                changed = True
                if cap is not None and need > cap:
                    return None
    return tuple(lb[1:])


def satisfies_subadditivity(diagram: MarkedDiagram, m: Sequence[int], order: int) -> bool:
    if any(x < 0 for x in m):
        return False
    if any(m[v - 1] < order for v in diagram.marked):
        return False
    return all(
        2 * m[k - 1] >= sum(m[j - 1] for j in diagram.neighbors(k))
        for k in diagram.unmarked
    )


@dataclass(frozen=True)
class CycleBoundResult:
    root: Root
    lower_bound: tuple[int, ...] | None
    status: str  # "pass" | "fail" | "inconclusive-beyond-cap"
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class CycleBoundCertificate:
    diagram: MarkedDiagram
    order: int
    results: tuple[CycleBoundResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)


def verify_cycle_bound(diagram: MarkedDiagram, i: int) -> CycleBoundCertificate:
    """Certify that the inequalities plus ``m_marked >= i`` force ``m >= alpha``.

    This is checked for every positive root ``alpha`` whose marked coefficient
    is ``i``. The least fixpoint of the ceiling propagation is the
    componentwise minimum of all integer solutions, so a fixpoint that falls
    short of some ``alpha`` is an explicit counterexample.
    """
    k = _require_contraction(diagram) - 1
    length = length_of(diagram)
    if not 1 <= i <= length:
        raise IndexOutOfRange(f"order {i} outside 1..{length} for {diagram.label()}")
    cap = 6 * i + 6
    lb = propagate_lower_bounds(diagram, i, cap)
    results = []
    for v in positive_roots(diagram).positives:
        if v[k] != i:
            continue
        if lb is None:
            results.append(CycleBoundResult(v, None, "inconclusive-beyond-cap"))
        elif all(a >= b for a, b in zip(lb, v)):
            results.append(CycleBoundResult(v, lb, "pass"))
        else:
            results.append(CycleBoundResult(v, lb, "fail", witness=lb))
    return CycleBoundCertificate(diagram, i, tuple(results))
