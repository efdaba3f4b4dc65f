"""Graph generators: exhaustive small shapes and random minimal nodal limits."""
from __future__ import annotations

import random
from itertools import combinations_with_replacement, permutations, product

from .graph import DualGraph, EllipticPoint, Vertex
from .stability import distinguished_points

NAMES = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class Shape:
    """Undecorated genus-one dual graph on vertices 0..size-1."""

    __slots__ = ("genus", "edges", "branches")

    def __init__(self, genus, edges, branches=()):
        self.genus = tuple(genus)
        self.edges = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        self.branches = tuple(sorted(branches))

    @property
    def size(self) -> int:
        return len(self.genus)

    def grow(self, at: int) -> "Shape":
        v = self.size
        return Shape(self.genus + (0,), self.edges + ((at, v),), self.branches)

    def _invariants(self):
        inc = [0] * self.size
        loops = [0] * self.size
        nbrs = [[] for _ in range(self.size)]
        for a, b in self.edges:
            inc[a] += 1
            inc[b] += 1
            if a == b:
                loops[a] += 1
            else:
                nbrs[a].append(b)
                nbrs[b].append(a)
        br = set(self.branches)
        base = [(self.genus[v], v in br, loops[v], inc[v]) for v in range(self.size)]
        return [(base[v], tuple(sorted(base[w] for w in nbrs[v]))) for v in range(self.size)]

    def canonical(self):
        inv = self._invariants()
        classes: dict = {}
        for v, key in enumerate(inv):
            classes.setdefault(key, []).append(v)
        keys = sorted(classes)
        best = None
        for choice in product(*(permutations(classes[k]) for k in keys)):
            order = [v for block in choice for v in block]
            relabel = {v: i for i, v in enumerate(order)}
            form = (
                tuple(self.genus[v] for v in order),
                tuple(sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in self.edges)),
                tuple(sorted(relabel[b] for b in self.branches)),
            )
            if best is None or form < best:
                best = form
        return best

    def to_graph(self, degrees=None, marks=None, r: int = 2) -> DualGraph:
        degrees = degrees or [0] * self.size
        marks = marks or [()] * self.size
        vs = tuple(Vertex(NAMES[i], self.genus[i], degrees[i], tuple(marks[i])) for i in range(self.size))
        es = tuple((NAMES[a], NAMES[b]) for a, b in self.edges)
        ell = EllipticPoint(tuple(NAMES[b] for b in self.branches)) if self.branches else None
        return DualGraph(vs, es, ell, r)


def core_shapes(max_vertices: int, *, elliptic: bool = True):
    yield Shape((1,), ())
    yield Shape((0,), ((0, 0),))
    for k in range(2, max_vertices + 1):
        yield Shape((0,) * k, [(i, (i + 1) % k) for i in range(k)])
    if elliptic:
        for l in range(1, max_vertices + 1):
            yield Shape((0,) * l, (), range(l))


def shapes(max_vertices: int, *, elliptic: bool = True) -> list[Shape]:
    """All genus-one shapes with at most ``max_vertices`` components, up to isomorphism."""
    seen = {}
    layer = []
    for s in core_shapes(max_vertices, elliptic=elliptic):
        key = s.canonical()
        if key not in seen:
            seen[key] = s
            layer.append(s)
    while layer:
        nxt = []
        for s in layer:
            if s.size >= max_vertices:
                continue
            for at in range(s.size):
                t = s.grow(at)
                key = t.canonical()
                if key not in seen:
                    seen[key] = t
                    nxt.append(t)
        layer = nxt
    return sorted(seen.values(), key=lambda s: (s.size, s.canonical()))


def degree_vectors(size: int, max_total: int, min_total: int = 0):
    """Degree assignments with total in [min_total, max_total]."""
    for total in range(min_total, max_total + 1):
        for slots in combinations_with_replacement(range(size), total):
            vec = [0] * size
            for s in slots:
                vec[s] += 1
            yield vec


def mark_placements(size: int, max_marks: int):
    """Placements of marks p1..pk, k <= max_marks, on labelled vertices."""
    for k in range(max_marks + 1):
        labels = [f"p{i}" for i in range(1, k + 1)]
        for where in product(range(size), repeat=k):
            out = [[] for _ in range(size)]
            for p, w in zip(labels, where):
                out[w].append(p)
            yield out


def exhaustive_graphs(max_vertices: int = 6, max_marks: int = 2, max_degree: int = 3,
                      *, min_degree: int = 0, r: int = 2):
    """Every decorated graph over :func:`shapes`, degrees summing to at most ``max_degree``."""
    for s in shapes(max_vertices):
        for marks in mark_placements(s.size, max_marks):
            for degrees in degree_vectors(s.size, max_degree, min_degree):
                yield s.to_graph(degrees, marks, r)


# -- random minimal nodal limits --------------------------------------------


def random_nodal_graph(rng: random.Random, *, max_tree: int = 6, max_marks: int = 3,
                       max_degree: int = 3, r: int | None = None) -> DualGraph:
    """A random nodal genus-one graph with d >= 1 meeting the minimality condition.

    Every contracted rational component ends up with at least two
    distinguished points.  Degrees lean towards 0 so that long contracted
    chains, and hence several reduction rounds, are common.
    """
    kind = rng.choice(["smooth", "smooth", "loop", "ring", "ring"])
    if kind == "smooth":
        shape = Shape((1,), ())
    elif kind == "loop":
        shape = Shape((0,), ((0, 0),))
    else:
        k = rng.randint(2, 4)
        shape = Shape((0,) * k, [(i, (i + 1) % k) for i in range(k)])
    for _ in range(rng.randint(0, max_tree)):
        shape = shape.grow(rng.randrange(shape.size))

    size = shape.size
    degrees = [rng.randint(1, max_degree) if rng.random() < 0.35 else 0 for _ in range(size)]
    if not any(degrees):
        degrees[rng.randrange(size)] = rng.randint(1, max_degree)
    marks: list[list[str]] = [[] for _ in range(size)]
    count = 0
    for _ in range(rng.randint(0, max_marks)):
        count += 1
        marks[rng.randrange(size)].append(f"p{count}")
    g = shape.to_graph(degrees, marks, r or rng.randint(1, 4))

    # repair: a contracted rational component needs a second special point
    while True:
        short = [v for v in g.vertices
                 if v.genus == 0 and v.degree == 0 and distinguished_points(g, v.id) < 2]
        if not short:
            return g
        v = short[0]
        i = NAMES.index(v.id)
        if rng.random() < 0.5:
            count += 1
            marks[i].append(f"p{count}")
        else:
            degrees[i] = rng.randint(1, max_degree)
        g = shape.to_graph(degrees, marks, g.r)


def random_corpus(size: int, seed: int = 0, **kw) -> list[DualGraph]:
    rng = random.Random(seed)
    return [random_nodal_graph(rng, **kw) for _ in range(size)]
