"""Decorated dual graphs of pointed genus-one maps.

A graph has one vertex per irreducible component (carrying its geometric
genus, the degree of the map on it, and its marked points), one edge per
node, and at most one elliptic hyperedge joining the branches of an
elliptic l-fold point.  Values are immutable and normalised on
construction, so ``==`` is equality of canonical forms.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


class SchemaError(ValueError):
    """Raised when serialized input does not follow the graph schema."""


class InvalidGraphError(ValueError):
    """Raised by a predicate or rewrite handed a graph that fails validation."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid dual graph: " + "; ".join(report.messages()))


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int = 0
    degree: int = 0
    marks: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(sorted(self.marks)))


@dataclass(frozen=True)
class EllipticPoint:
    """Elliptic l-fold point; ``branches`` are the l components through it."""

    branches: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(sorted(self.branches)))

    @property
    def multiplicity(self) -> int:
        return len(self.branches)


def _edge(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class DualGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...] = ()
    elliptic: EllipticPoint | None = None
    r: int = 2
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        object.__setattr__(self, "edges", tuple(sorted(_edge(a, b) for a, b in self.edges)))
        if self.elliptic is not None and not isinstance(self.elliptic, EllipticPoint):
            object.__setattr__(self, "elliptic", EllipticPoint(tuple(self.elliptic)))

    # -- lookups ---------------------------------------------------------

    @cached_property
    def _by_id(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    def __contains__(self, vid: str) -> bool:
        return vid in self._by_id

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._by_id[vid]
        except KeyError:
            raise KeyError(f"unknown vertex {vid!r}") from None

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @property
    def total_degree(self) -> int:
        return sum(v.degree for v in self.vertices)

    @property
    def marks(self) -> tuple[str, ...]:
        return tuple(sorted(p for v in self.vertices for p in v.marks))

    @property
    def n(self) -> int:
        return sum(len(v.marks) for v in self.vertices)

    @property
    def multiplicity(self) -> int:
        """Elliptic multiplicity, 0 for a nodal curve."""
        return 0 if self.elliptic is None else self.elliptic.multiplicity

    def branches(self) -> frozenset[str]:
        return frozenset(self.elliptic.branches) if self.elliptic else frozenset()

    def incidences(self, vid: str) -> int:
        """Node incidences at ``vid``; a self-loop contributes two."""
        return sum((a == vid) + (b == vid) for a, b in self.edges)

    def neighbours(self, vid: str) -> list[str]:
        """Edge-neighbours of ``vid``, with multiplicity, self excluded."""
        out = []
        for a, b in self.edges:
            if a == vid and b != vid:
                out.append(b)
            elif b == vid and a != vid:
                out.append(a)
        return out

    def has_loop(self, vid: str) -> bool:
        return (vid, vid) in self.edges

    # -- functional updates ---------------------------------------------

    def replace(self, *, vertices=None, edges=None, elliptic=..., r=None) -> "DualGraph":
        return DualGraph(
            vertices=self.vertices if vertices is None else tuple(vertices),
            edges=self.edges if edges is None else tuple(edges),
            elliptic=self.elliptic if elliptic is ... else elliptic,
            r=self.r if r is None else r,
        )

    # -- validation ------------------------------------------------------

    @property
    def report(self) -> "ValidationReport":
        rep = self._cache.get("report")
        if rep is None:
            rep = self._cache["report"] = validate(self)
        return rep

    def require_valid(self) -> "DualGraph":
        if not self.report.ok:
            raise InvalidGraphError(self.report)
        return self


def graph(vertices: Iterable, edges: Iterable = (), elliptic: Iterable[str] | None = None, r: int = 2) -> DualGraph:
    """Shorthand constructor.

    ``vertices`` items may be :class:`Vertex` objects or tuples
    ``(id, genus, degree, marks)`` with trailing fields optional::

        >>> g = graph([("Z", 1), ("R", 0, 3)], [("Z", "R")])
        >>> g.total_degree
        3
    """
    vs = [v if isinstance(v, Vertex) else Vertex(*v) for v in vertices]
    ell = None if elliptic is None else EllipticPoint(tuple(elliptic))
    return DualGraph(tuple(vs), tuple(tuple(e) for e in edges), ell, r)


# -- validation ---------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {code for code, _ in self.violations}

    def messages(self) -> list[str]:
        return [f"{code}: {msg}" for code, msg in self.violations]

    def __bool__(self) -> bool:
        return self.ok


def _components(ids: Iterable[str], links: Iterable[Iterable[str]]) -> list[set[str]]:
    parent = {v: v for v in ids}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for group in links:
        group = [v for v in group if v in parent]
        for a, b in zip(group, group[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    comps: dict[str, set[str]] = {}
    for v in parent:
        comps.setdefault(find(v), set()).add(v)
    return sorted(comps.values(), key=lambda c: min(c))


def connected_components(g: DualGraph, *, hyperedge: bool = True) -> list[set[str]]:
    links = list(g.edges)
    if hyperedge and g.elliptic is not None:
        links.append(g.elliptic.branches)
    return _components(g.ids, links)


def genus_formula(g: DualGraph) -> int:
    """sum of genera + #edges + delta - (#vertices - 1), no connectivity check."""
    delta = g.multiplicity
    return sum(v.genus for v in g.vertices) + len(g.edges) + delta - (len(g.vertices) - 1)


def validate(g: DualGraph, *, require_degree: bool = False) -> ValidationReport:
    """Check every structural invariant and report each one that fails.

    With ``require_degree`` the total map degree must be positive (map mode).
    """
    bad: list[tuple[str, str]] = []
    if not isinstance(g.r, int) or g.r < 1:
        bad.append(("target-dimension", f"r must be a positive integer, got {g.r!r}"))
    if not g.vertices:
        bad.append(("empty", "graph has no vertices"))
        return ValidationReport(tuple(bad))

    seen: set[str] = set()
    for v in g.vertices:
        if v.id in seen:
            bad.append(("duplicate-vertex", f"vertex id {v.id!r} repeated"))
        seen.add(v.id)
        if v.genus not in (0, 1):
            bad.append(("vertex-genus", f"vertex {v.id!r} has geometric genus {v.genus}"))
        if v.degree < 0:
            bad.append(("vertex-degree", f"vertex {v.id!r} has negative degree {v.degree}"))

    labels: set[str] = set()
    for v in g.vertices:
        for p in v.marks:
            if p in labels:
                bad.append(("duplicate-mark", f"mark {p!r} appears more than once"))
            labels.add(p)

    dangling = [e for e in g.edges if e[0] not in seen or e[1] not in seen]
    for e in dangling:
        bad.append(("dangling-edge", f"edge {e} references an unknown vertex"))

    ell = g.elliptic
    if ell is not None:
        if not ell.branches:
            bad.append(("elliptic-empty", "elliptic point has no branches"))
        if len(set(ell.branches)) != len(ell.branches):
            bad.append(("elliptic-duplicate-branch", "elliptic branches must be distinct vertices"))
        for b in ell.branches:
            if b not in seen:
                bad.append(("elliptic-unknown-branch", f"branch {b!r} is not a vertex"))
            elif g.vertex(b).genus != 0:
                bad.append(("elliptic-branch-genus", f"branch {b!r} must have geometric genus 0"))
        if any(v.genus for v in g.vertices):
            bad.append(("elliptic-with-genus-one", "a genus-one vertex cannot coexist with an elliptic point"))
        if not dangling:
            edge_comps = connected_components(g, hyperedge=False)
            if len(g.edges) != len(g.vertices) - len(edge_comps):
                bad.append(("elliptic-cycle", "with an elliptic point the nodes must form a forest"))

    if dangling or (ell is not None and any(b not in seen for b in ell.branches)):
        return ValidationReport(tuple(bad))

    if len(connected_components(g)) != 1:
        bad.append(("disconnected", "graph is not connected"))
    else:
        pa = genus_formula(g)
        if pa != 1:
            bad.append(("genus", f"arithmetic genus is {pa}, expected 1"))

    if require_degree and g.total_degree < 1:
        bad.append(("degree-zero", "total map degree must be at least 1"))
    return ValidationReport(tuple(bad))


# -- JSON schema --------------------------------------------------------


def to_dict(g: DualGraph) -> dict:
    return {
        "r": g.r,
        "vertices": [
            {"id": v.id, "genus": v.genus, "degree": v.degree, "marks": list(v.marks)}
            for v in g.vertices
        ],
        "edges": [list(e) for e in g.edges],
        "elliptic": None if g.elliptic is None else {"branches": list(g.elliptic.branches)},
    }


def to_json(g: DualGraph, *, indent: int | None = None) -> str:
    return json.dumps(to_dict(g), indent=indent)


def _want(obj, key, kind, where):
    if not isinstance(obj, Mapping) or key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    val = obj[key]
    # bool is an int subclass; the schema never allows it
    if isinstance(val, bool) or not isinstance(val, kind):
        raise SchemaError(f"{where}.{key}: expected {kind}, got {type(val).__name__}")
    return val


def from_dict(data) -> DualGraph:
    if not isinstance(data, Mapping):
        raise SchemaError("graph must be a JSON object")
    extra = set(data) - {"r", "vertices", "edges", "elliptic"}
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}")
    r = _want(data, "r", int, "graph")
    vertices = []
    for i, vd in enumerate(_want(data, "vertices", list, "graph")):
        where = f"vertices[{i}]"
        if not isinstance(vd, Mapping) or set(vd) - {"id", "genus", "degree", "marks"}:
            raise SchemaError(f"{where}: expected object with id, genus, degree, marks")
        marks = _want(vd, "marks", list, where)
        if not all(isinstance(p, str) for p in marks):
            raise SchemaError(f"{where}.marks: labels must be strings")
        vertices.append(Vertex(
            _want(vd, "id", str, where),
            _want(vd, "genus", int, where),
            _want(vd, "degree", int, where),
            tuple(marks),
        ))
    edges = []
    for i, e in enumerate(_want(data, "edges", list, "graph")):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise SchemaError(f"edges[{i}]: expected a pair of vertex ids")
        edges.append(tuple(e))
    if "elliptic" not in data:
        raise SchemaError("graph: missing key 'elliptic'")
    ell = data["elliptic"]
    if ell is not None:
        branches = _want(ell, "branches", list, "elliptic")
        if not all(isinstance(b, str) for b in branches):
            raise SchemaError("elliptic.branches: ids must be strings")
        ell = EllipticPoint(tuple(branches))
    return DualGraph(tuple(vertices), tuple(edges), ell, r)


def from_json(text: str) -> DualGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None
    return from_dict(data)


# -- DOT ----------------------------------------------------------------


def to_dot(g: DualGraph, name: str = "C") -> str:
    """Render as an undirected DOT graph.

    Components are ellipses labelled ``id (g, d)``; an elliptic point is a
    star node ``E_l`` joined to its branches; marks hang off as plaintext
    leaves.
    """
    def q(s):
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"graph {q(name)} {{"]
    for v in g.vertices:
        shape = "doublecircle" if v.genus else "ellipse"
        lines.append(f"  {q(v.id)} [shape={shape}, label={q(f'{v.id} (g={v.genus}, d={v.degree})')}];")
    for a, b in g.edges:
        lines.append(f"  {q(a)} -- {q(b)};")
    if g.elliptic is not None:
        star = "E_" + str(g.elliptic.multiplicity)
        lines.append(f"  {q('__elliptic')} [shape=star, label={q(star)}];")
        for b in g.elliptic.branches:
            lines.append(f"  {q('__elliptic')} -- {q(b)} [style=bold];")
    for v in g.vertices:
        for p in v.marks:
            node = f"__mark_{p}"
            lines.append(f"  {q(node)} [shape=plaintext, label={q(p)}];")
            lines.append(f"  {q(v.id)} -- {q(node)} [style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"
