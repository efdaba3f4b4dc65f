"""Irreducible components of the space of m-stable genus-one maps to P^r.

A boundary component is the closure of the locus of maps from a smooth
genus-one curve Z, contracted to a point, with k rational tails of degrees
d_1, ..., d_k whose tangent lines at the image of Z are independent; j of
the marks lie on Z and the rest are distributed over the tails.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .graph import DualGraph, Vertex
from .stability import StabilityParams, core, stability_interval

PRINCIPAL = "principal"
BOUNDARY = "boundary"


def mark_labels(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(1, n + 1))


def partitions(d: int, max_part: int | None = None):
    """Partitions of ``d`` as non-increasing tuples, in reverse lexicographic order."""
    if max_part is None:
        max_part = d
    if d == 0:
        yield ()
        return
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, first):
            yield (first,) + rest


@dataclass(frozen=True, order=True)
class ComponentDescriptor:
    """Principal component, or a boundary component in canonical form.

    ``assignment`` is the sorted tuple of ``(d_i, marks on tail i)`` pairs,
    so descriptors differing by a permutation of equal tails compare equal.
    """

    kind: str
    assignment: tuple[tuple[int, tuple[str, ...]], ...] = ()
    core_marks: tuple[str, ...] = ()

    @classmethod
    def boundary(cls, tails, core_marks=()) -> "ComponentDescriptor":
        assignment = tuple(sorted((int(d), tuple(sorted(ms))) for d, ms in tails))
        return cls(BOUNDARY, assignment, tuple(sorted(core_marks)))

    @property
    def partition(self) -> tuple[int, ...]:
        return tuple(sorted((d for d, _ in self.assignment), reverse=True))

    @property
    def k(self) -> int:
        return len(self.assignment)

    @property
    def j(self) -> int:
        return len(self.core_marks)

    def sort_key(self):
        if self.kind == PRINCIPAL:
            return (0,)
        return (1, self.k, self.partition, self.j, self.assignment, self.core_marks)

    def check(self, params: StabilityParams) -> None:
        if self.kind == PRINCIPAL:
            if self.assignment or self.core_marks:
                raise ValueError("the principal descriptor carries no tail data")
            return
        if self.kind != BOUNDARY:
            raise ValueError(f"unknown component kind {self.kind!r}")
        labels = set(mark_labels(params.n))
        placed = list(self.core_marks) + [p for _, ms in self.assignment for p in ms]
        if sorted(placed) != sorted(labels):
            raise ValueError("marks on the core and tails must be exactly p1..pn, once each")
        if any(d < 1 for d, _ in self.assignment) or sum(self.partition) != params.d:
            raise ValueError("tail degrees must be a partition of d")
        if not 1 <= self.k <= min(params.r, params.d):
            raise ValueError("need 1 <= k <= min(r, d)")
        if self.k + self.j < params.m + 1:
            raise ValueError("need k + j >= m + 1")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "partition": list(self.partition),
            "j": self.j,
            "core_marks": list(self.core_marks),
            "assignment": [[d, list(ms)] for d, ms in self.assignment],
        }


def enumerate_components(params: StabilityParams) -> list[ComponentDescriptor]:
    m, n, r, d = params.m, params.n, params.r, params.d
    if d < 1:
        raise ValueError("d must be positive")
    labels = mark_labels(n)
    found = {ComponentDescriptor(PRINCIPAL)}
    for part in partitions(d):
        k = len(part)
        if k > min(r, d):
            continue
        for j in range(max(0, m + 1 - k), n + 1):
            for on_core in combinations(labels, j):
                rest = [p for p in labels if p not in on_core]
                for where in product(range(k), repeat=len(rest)):
                    tails = [(di, [p for p, w in zip(rest, where) if w == i]) for i, di in enumerate(part)]
                    found.add(ComponentDescriptor.boundary(tails, on_core))
    return sorted(found, key=ComponentDescriptor.sort_key)


def component_dimension(desc: ComponentDescriptor, params: StabilityParams) -> int:
    r, d, n = params.r, params.d, params.n
    if desc.kind == PRINCIPAL:
        return d * (r + 1) + n
    # M_{1,k+j} x fibre product over P^r of the pointed rational tails
    tails = sum(di * (r + 1) + r - 2 + len(ms) for di, ms in desc.assignment)
    return desc.k + desc.j + tails - (desc.k - 1) * r


def generic_element_graph(desc: ComponentDescriptor, params: StabilityParams) -> DualGraph:
    desc.check(params)
    if desc.kind == PRINCIPAL:
        return DualGraph((Vertex("Z", 1, params.d, mark_labels(params.n)),), (), None, params.r)
    vertices = [Vertex("Z", 1, 0, desc.core_marks)]
    edges = []
    for i, (di, ms) in enumerate(desc.assignment, start=1):
        vertices.append(Vertex(f"R{i}", 0, di, ms))
        edges.append(("Z", f"R{i}"))
    return DualGraph(tuple(vertices), tuple(edges), None, params.r)


# -- smoothability -----------------------------------------------------------


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(x, float):
        raise ValueError("use exact rationals (strings like '3/4' or integers), not floats")
    return Fraction(x)


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for c in range(ncols):
        pivot = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rk], m[pivot] = m[pivot], m[rk]
        for i in range(rk + 1, len(m)):
            f = m[i][c] / m[rk][c]
            if f:
                for cc in range(c, ncols):
                    m[i][cc] -= f * m[rk][cc]
        rk += 1
        if rk == len(m):
            break
    return rk


@dataclass(frozen=True)
class TangentData:
    vectors: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, vectors) -> "TangentData":
        return cls(tuple(tuple(parse_rational(x) for x in v) for v in vectors))

    @classmethod
    def from_json(cls, text: str) -> "TangentData":
        data = json.loads(text)
        if not isinstance(data, dict) or not isinstance(data.get("vectors"), list):
            raise ValueError('tangent file must look like {"vectors": [["1", "0"], ...]}')
        return cls.of(data["vectors"])


def contracted_elliptic_subcurve(g: DualGraph) -> frozenset[str] | None:
    """Maximal connected constant genus-one subcurve, or None if the core is not constant."""
    z = core(g)
    if any(g.vertex(v).degree for v in z):
        return None
    grown, frontier = set(z), list(z)
    while frontier:
        v = frontier.pop()
        for w in g.neighbours(v):
            if w not in grown and g.vertex(w).degree == 0:
                grown.add(w)
                frontier.append(w)
    return frozenset(grown)


def is_smoothable(g: DualGraph, tangents: TangentData | None = None) -> bool:
    """Whether the map lies on the principal component.

    ``tangents=None`` means general tails: the l tangent vectors at the
    contracted subcurve are then dependent exactly when l > r.
    """
    if stability_interval(g) is None:
        raise ValueError("graph is not m-stable for any m")
    e = contracted_elliptic_subcurve(g)
    if e is None:
        return True
    l = sum(1 for a, b in g.edges if (a in e) != (b in e))
    if tangents is None:
        return l > g.r
    vecs = tangents.vectors
    if len(vecs) != l:
        raise ValueError(f"expected {l} tangent vectors, got {len(vecs)}")
    for v in vecs:
        if len(v) != g.r:
            raise ValueError(f"tangent vectors must have length r={g.r}")
        if not any(v):
            raise ValueError("tangent vectors must be nonzero")
    return rank(vecs) < l


# -- thresholds --------------------------------------------------------------


def irreducibility_threshold(n: int, r: int, d: int) -> int:
    """Least m for which only the principal component survives."""
    m = 0
    while len(enumerate_components(StabilityParams(m, n, r, d))) > 1:
        m += 1
    return m


KNOWN_SMOOTH = "known-smooth"
NOT_COVERED = "not-covered"


def smoothness_certificate(m: int, n: int, r: int, d: int) -> str:
    return KNOWN_SMOOTH if d + n <= m <= 5 else NOT_COVERED


# -- output ---------------------------------------------------------------------


def component_rows(params: StabilityParams) -> list[dict]:
    rows = []
    for desc in enumerate_components(params):
        row = desc.to_dict()
        row["dimension"] = component_dimension(desc, params)
        rows.append(row)
    return rows


def format_table(rows: list[dict]) -> str:
    header = ("kind", "partition", "j", "assignment", "dimension")

    def cell(row, col):
        if col == "partition":
            return "+".join(map(str, row["partition"])) or "-"
        if col == "assignment":
            if row["kind"] == PRINCIPAL:
                return "-"
            tails = " ".join(f"{d}{{{','.join(ms)}}}" for d, ms in row["assignment"])
            core_marks = ",".join(row["core_marks"])
            return f"Z{{{core_marks}}} {tails}"
        return str(row[col])

    body = [[cell(row, c) for c in header] for row in rows]
    widths = [max(len(c), *(len(b[i]) for b in body)) if body else len(c) for i, c in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for b in body:
        lines.append("  ".join(x.ljust(w) for x, w in zip(b, widths)).rstrip())
    return "\n".join(lines) + "\n"

