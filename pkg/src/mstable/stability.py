"""Decomposition and m-stability predicates for genus-one dual graphs."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .graph import DualGraph, Vertex, connected_components, genus_formula, _components

SUBCURVE_CAP = 16
HYPERPLANE_PREFIX = "#h"


@dataclass(frozen=True)
class StabilityParams:
    m: int
    n: int
    r: int
    d: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be non-negative")
        if self.r < 1:
            raise ValueError("r must be positive")
        if self.d < 0:
            raise ValueError("d must be non-negative")

    @classmethod
    def of(cls, g: DualGraph, m: int) -> "StabilityParams":
        return cls(m=m, n=g.n, r=g.r, d=g.total_degree)

    def check(self, g: DualGraph) -> None:
        if (self.n, self.r, self.d) != (g.n, g.r, g.total_degree):
            raise ValueError(
                f"parameters (n={self.n}, r={self.r}, d={self.d}) do not match graph "
                f"(n={g.n}, r={g.r}, d={g.total_degree})"
            )


# -- genus and the core ---------------------------------------------------


def arithmetic_genus(g: DualGraph) -> int:
    if len(connected_components(g)) != 1:
        raise ValueError("arithmetic genus is only defined here for connected graphs")
    return genus_formula(g)


def subcurve_genus(g: DualGraph, vs) -> int:
    """Arithmetic genus of the subcurve spanned by ``vs``.

    Meeting k < l branches of an elliptic l-fold point gives k lines in
    general position (delta = k - 1); meeting all of them gives delta = l.
    """
    vs = set(vs)
    edges = sum(1 for a, b in g.edges if a in vs and b in vs)
    k = sum(1 for b in g.branches() if b in vs)
    delta = 0 if k == 0 else (k if k == g.multiplicity else k - 1)
    return sum(g.vertex(v).genus for v in vs) + edges + delta - (len(vs) - 1)


def is_connected_subset(g: DualGraph, vs) -> bool:
    vs = set(vs)
    links = [e for e in g.edges if e[0] in vs and e[1] in vs]
    if g.elliptic is not None:
        links.append([b for b in g.elliptic.branches if b in vs])
    return len(_components(vs, links)) == 1


def core(g: DualGraph) -> frozenset[str]:
    """Vertices of the minimal elliptic subcurve."""
    g.require_valid()
    if g.elliptic is not None:
        return frozenset(g.elliptic.branches)
    for v in g.vertices:
        if v.genus == 1:
            return frozenset([v.id])
    # unique cycle: strip leaves until none remain
    alive = set(g.ids)
    valence = {v: g.incidences(v) for v in alive}
    leaves = [v for v in alive if valence[v] <= 1]
    while leaves:
        v = leaves.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.neighbours(v):
            if w in alive:
                valence[w] -= 1
                if valence[w] == 1:
                    leaves.append(w)
    return frozenset(alive)


def core_kind(g: DualGraph) -> str:
    """One of ``smooth-elliptic``, ``irreducible-nodal``, ``ring`` or ``elliptic-l-fold(l)``."""
    z = core(g)
    if g.elliptic is not None:
        return f"elliptic-l-fold({g.multiplicity})"
    if len(z) == 1:
        (v,) = z
        return "smooth-elliptic" if g.vertex(v).genus == 1 else "irreducible-nodal"
    return "ring"


class Tail(NamedTuple):
    vertices: frozenset[str]
    attaching_edge: tuple[str, str]  # (core vertex, tail vertex)


class Decomposition(NamedTuple):
    core: frozenset[str]
    tails: tuple[Tail, ...]


def fundamental_decomposition(g: DualGraph) -> Decomposition:
    z = core(g)
    rest = [v for v in g.ids if v not in z]
    inner = [e for e in g.edges if e[0] not in z and e[1] not in z]
    tails = []
    for comp in _components(rest, inner):
        attach = [(a, b) if a in z else (b, a) for a, b in g.edges
                  if (a in z and b in comp) or (b in z and a in comp)]
        assert len(attach) == 1, f"tail {sorted(comp)} meets the core in {len(attach)} nodes"
        n_edges = sum(1 for a, b in inner if a in comp)
        assert n_edges == len(comp) - 1, f"tail {sorted(comp)} is not a tree"
        assert all(g.vertex(v).genus == 0 for v in comp), f"tail {sorted(comp)} has positive genus"
        tails.append(Tail(frozenset(comp), attach[0]))
    return Decomposition(z, tuple(tails))


# -- counting -------------------------------------------------------------


def distinguished_points(g: DualGraph, vid: str) -> int:
    v = g.vertex(vid)
    return len(v.marks) + g.incidences(vid) + (vid in g.branches())


def boundary_count(g: DualGraph, vs) -> int:
    """Attaching nodes plus marks of the subcurve ``vs``."""
    vs = set(vs)
    out = sum(1 for a, b in g.edges if (a in vs) != (b in vs))
    return out + sum(len(g.vertex(v).marks) for v in vs)


def level(g: DualGraph) -> int:
    return boundary_count(g, core(g))


def genus_one_subcurves(g: DualGraph, cap: int = SUBCURVE_CAP) -> list[frozenset[str]]:
    """All connected subcurves of arithmetic genus one, by exhaustive search."""
    g.require_valid()
    if len(g.vertices) > cap:
        raise ValueError(f"{len(g.vertices)} vertices exceeds the subcurve search cap of {cap}")
    ids = g.ids
    found = []
    for size in range(1, len(ids) + 1):
        for vs in combinations(ids, size):
            if subcurve_genus(g, vs) == 1 and is_connected_subset(g, vs):
                found.append(frozenset(vs))
    return found


def canonical_degree(g: DualGraph, vid: str) -> int:
    """Degree of the dualizing sheaf restricted to the component ``vid``."""
    v = g.vertex(vid)
    return 2 * v.genus - 2 + g.incidences(vid) + 2 * (vid in g.branches())


def is_canonically_polarized(g: DualGraph) -> bool:
    g.require_valid()
    return all(canonical_degree(g, v.id) + len(v.marks) + 3 * v.degree > 0 for v in g.vertices)


def polarization_power_bound(m: int, n: int) -> int:
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    return n + max(2 * m, 4) + 1


# -- stability --------------------------------------------------------------


class Failure(NamedTuple):
    clause: str
    vertex: str | None
    message: str


@dataclass(frozen=True)
class Verdict:
    failures: tuple[Failure, ...] = ()

    @property
    def stable(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.stable

    @property
    def clauses(self) -> frozenset[str]:
        return frozenset(f.clause for f in self.failures)

    def reasons(self) -> list[str]:
        return [f"({f.clause}) {f.message}" for f in self.failures]


def _automorphism_failures(g: DualGraph, constant) -> list[Failure]:
    """Clause (3): no infinitesimal automorphisms.

    ``constant(v)`` says whether the map is constant on component ``v``.
    """
    out = []
    dp = {v.id: distinguished_points(g, v.id) for v in g.vertices}
    if g.elliptic is None:
        for v in g.vertices:
            if v.genus == 0 and constant(v) and dp[v.id] < 3:
                out.append(Failure("3a", v.id, f"rational component {v.id} is contracted with {dp[v.id]} distinguished points, needs 3"))
        return out
    branches = g.elliptic.branches
    for b in branches:
        if constant(g.vertex(b)) and dp[b] < 2:
            out.append(Failure("3b1", b, f"branch {b} is contracted with {dp[b]} distinguished points, needs 2"))
    if all(constant(g.vertex(b)) for b in branches) and max(dp[b] for b in branches) < 3:
        out.append(Failure("3b2", None, "core is contracted and no branch has 3 distinguished points"))
    for v in g.vertices:
        if v.id not in branches and constant(v) and dp[v.id] < 3:
            out.append(Failure("3b3", v.id, f"component {v.id} is contracted with {dp[v.id]} distinguished points, needs 3"))
    return out


def _failures(g: DualGraph, m: int, constant) -> list[Failure]:
    out = []
    if g.elliptic is not None and g.multiplicity > m:
        out.append(Failure("1", None, f"elliptic {g.multiplicity}-fold point exceeds m={m}"))
    z = core(g)
    if all(constant(g.vertex(v)) for v in z):
        lv = level(g)
        if lv <= m:
            out.append(Failure("2", None, f"contracted core has level {lv}, needs more than m={m}"))
    return out + _automorphism_failures(g, constant)


def _constant_map(v: Vertex) -> bool:
    return v.degree == 0


def _constant_curve(v: Vertex) -> bool:
    return True


def is_m_stable_map(g: DualGraph, params: StabilityParams) -> Verdict:
    """m-stability of the map encoded by ``g`` (characteristic zero)."""
    g.require_valid()
    params.check(g)
    if params.d < 1:
        raise ValueError("map mode needs total degree d >= 1")
    return Verdict(tuple(_failures(g, params.m, _constant_map)))


def is_m_stable_curve(g: DualGraph, m: int, n: int) -> Verdict:
    """m-stability of the underlying pointed curve; map degrees are ignored."""
    if not 0 <= m < n:
        raise ValueError(f"m-stable curves need 0 <= m < n, got m={m}, n={n}")
    g.require_valid()
    if g.n != n:
        raise ValueError(f"graph carries {g.n} marks, expected n={n}")
    return Verdict(tuple(_failures(g, m, _constant_curve)))


@dataclass(frozen=True)
class MInterval:
    """Closed interval of integers ``[low, high]``; ``high=None`` is unbounded."""

    low: int
    high: int | None

    def __contains__(self, m: int) -> bool:
        return m >= self.low and (self.high is None or m <= self.high)

    def __str__(self) -> str:
        return f"[{self.low}, {'inf' if self.high is None else self.high}]"


def stability_interval(g: DualGraph, r: int | None = None, d: int | None = None) -> MInterval | None:
    """The set of m for which ``g`` is m-stable, or ``None`` when empty."""
    g.require_valid()
    if r is not None and r != g.r or d is not None and d != g.total_degree:
        raise ValueError("r and d must match the graph")
    if g.total_degree < 1:
        raise ValueError("map mode needs total degree d >= 1")
    if _automorphism_failures(g, _constant_map):
        return None
    z = core(g)
    if any(g.vertex(v).degree for v in z):
        return MInterval(g.multiplicity, None)
    hi = level(g) - 1
    return MInterval(g.multiplicity, hi) if hi >= g.multiplicity else None


def augment_with_hyperplane_marks(g: DualGraph, m: int) -> DualGraph:
    """Add the preimages of m+1 general hyperplanes as extra marks.

    Round j places ``degree(v)`` marks labelled ``#h<j>.<k>`` on each
    component v, in vertex-id order.
    """
    params = StabilityParams.of(g, m)
    verdict = is_m_stable_map(g, params)
    if not verdict:
        raise ValueError("input is not an m-stable map: " + "; ".join(verdict.reasons()))
    clash = [p for p in g.marks if p.startswith(HYPERPLANE_PREFIX)]
    if clash:
        raise ValueError(f"marks {clash} use the reserved prefix {HYPERPLANE_PREFIX!r}")
    extra: dict[str, list[str]] = {v.id: [] for v in g.vertices}
    for j in range(1, m + 2):
        k = 1
        for v in g.vertices:
            for _ in range(v.degree):
                extra[v.id].append(f"{HYPERPLANE_PREFIX}{j}.{k}")
                k += 1
    vertices = [Vertex(v.id, v.genus, v.degree, v.marks + tuple(extra[v.id])) for v in g.vertices]
    return g.replace(vertices=vertices)
