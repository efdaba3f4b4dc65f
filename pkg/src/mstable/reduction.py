"""m-stable reduction of a nodal genus-one limit.

Starting from the central fibre of a nodal reduction, alternately blow up
the marks on the minimal elliptic subcurve and contract that subcurve to an
elliptic point, for as long as the map is constant on it and its level is
at most m; then contract the unstable rational components.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import DualGraph, EllipticPoint, Vertex, to_dict
from .stability import (
    StabilityParams,
    core,
    distinguished_points,
    is_m_stable_map,
    level,
)

BLOW_UP = "blow-up"
CONTRACT_CORE = "contract-core"
STABILIZE = "stabilize-contract"

NONCONSTANT = "t"
LEVEL_EXCEEDS = "e"
ALREADY_NONCONSTANT = "already-nonconstant"


class ReductionError(RuntimeError):
    """An internal invariant of the reduction failed; indicates a model bug."""


@dataclass(frozen=True)
class RewriteStep:
    kind: str
    affected: tuple[str, ...]
    before: DualGraph
    after: DualGraph
    level_before: int
    level_after: int
    multiplicity_before: int
    multiplicity_after: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "affected": list(self.affected),
            "level_before": self.level_before,
            "level_after": self.level_after,
            "multiplicity_before": self.multiplicity_before,
            "multiplicity_after": self.multiplicity_after,
            "before": to_dict(self.before),
            "after": to_dict(self.after),
        }


@dataclass(frozen=True)
class ReductionTrace:
    initial: DualGraph
    steps: tuple[RewriteStep, ...]
    final: DualGraph
    cause: str
    levels: tuple[int, ...] = field(default=())  # levels of C_0, C_1, ..., C_i

    @property
    def contractions(self) -> int:
        return sum(1 for s in self.steps if s.kind == CONTRACT_CORE)


def _core_is_constant(g: DualGraph) -> bool:
    return all(g.vertex(v).degree == 0 for v in core(g))


def _fresh(g_ids, base: str) -> str:
    vid = base
    while vid in g_ids:
        vid += "'"
    return vid


def _step(kind, affected, before, after) -> RewriteStep:
    return RewriteStep(kind, tuple(affected), before, after, level(before), level(after),
                       before.multiplicity, after.multiplicity)


def blow_up_core_marks(g: DualGraph, *, tag: str = "x") -> DualGraph:
    """Move every mark on the core onto a new exceptional P^1 glued at that point."""
    g.require_valid()
    z = core(g)
    ids = set(g.ids)
    vertices, edges = [], list(g.edges)
    for v in g.vertices:
        if v.id not in z or not v.marks:
            vertices.append(v)
            continue
        vertices.append(Vertex(v.id, v.genus, v.degree, ()))
        for p in v.marks:
            e = _fresh(ids, f"{tag}:{p}")
            ids.add(e)
            vertices.append(Vertex(e, 0, 0, (p,)))
            edges.append((v.id, e))
    return g.replace(vertices=vertices, edges=edges)


def contract_core(g: DualGraph) -> DualGraph:
    """Contract a constant, unmarked core to an elliptic point.

    The branches of the new point are the components that met the core, one
    per attaching node.
    """
    g.require_valid()
    z = core(g)
    if any(g.vertex(v).degree for v in z):
        raise ValueError("the map is not constant on the core; it cannot be contracted")
    if any(g.vertex(v).marks for v in z):
        raise ValueError("the core carries marks; blow them up before contracting")
    attach = [b if a in z else a for a, b in g.edges if (a in z) != (b in z)]
    if len(set(attach)) != len(attach):
        raise ValueError("a component meets the core in more than one node")
    if not attach:
        raise ValueError("the core has no attaching nodes")
    vertices = [v for v in g.vertices if v.id not in z]
    edges = [e for e in g.edges if e[0] not in z and e[1] not in z]
    out = g.replace(vertices=vertices, edges=edges, elliptic=EllipticPoint(tuple(attach)))
    return out.require_valid()


def _contractible(g: DualGraph, v: Vertex) -> bool:
    return (
        v.genus == 0
        and v.degree == 0
        and v.id not in g.branches()
        and not g.has_loop(v.id)
        and distinguished_points(g, v.id) == 2
    )


def _contract_one(g: DualGraph, vid: str) -> DualGraph:
    v = g.vertex(vid)
    nbrs = g.neighbours(vid)
    edges = list(g.edges)
    for w in nbrs:
        edges.remove((min(vid, w), max(vid, w)))
    if len(nbrs) == 2:
        vertices = [u for u in g.vertices if u.id != vid]
        edges.append((nbrs[0], nbrs[1]))
    else:
        (w,) = nbrs
        (p,) = v.marks
        vertices = [
            Vertex(u.id, u.genus, u.degree, u.marks + (p,)) if u.id == w else u
            for u in g.vertices
            if u.id != vid
        ]
    return g.replace(vertices=vertices, edges=edges)


def _stabilize(g: DualGraph) -> tuple[DualGraph, list[RewriteStep]]:
    steps = []
    while True:
        target = next((v for v in g.vertices if _contractible(g, v)), None)
        if target is None:
            return g, steps
        after = _contract_one(g, target.id)
        steps.append(_step(STABILIZE, [target.id], g, after))
        g = after


def stabilize(g: DualGraph) -> DualGraph:
    """Contract every contracted rational component with exactly two distinguished points.

    Such a component meets the rest in two nodes (which are spliced into
    one) or in one node and one mark (the mark moves across).  Elliptic
    branches and self-nodal components are kept.
    """
    g.require_valid()
    return _stabilize(g)[0]


def _check(ok: bool, message: str) -> None:
    if not ok:
        raise ReductionError(message)


def _check_minimal(g: DualGraph) -> None:
    for v in g.vertices:
        if v.genus == 0 and v.degree == 0 and distinguished_points(g, v.id) < 2:
            raise ValueError(
                f"component {v.id} is contracted with fewer than two distinguished points; "
                "the nodal reduction is not minimal"
            )


def reduce(g: DualGraph, params: StabilityParams) -> ReductionTrace:
    """Run the m-stable reduction on a minimal nodal central fibre."""
    g.require_valid()
    params.check(g)
    if params.d < 1:
        raise ValueError("reduction needs total degree d >= 1")
    if g.elliptic is not None:
        raise ValueError("input must be nodal; it already has an elliptic point")
    _check_minimal(g)

    m = params.m
    marks, degree = g.marks, g.total_degree
    steps: list[RewriteStep] = []
    levels = [level(g)]
    cur = g

    if not _core_is_constant(cur):
        cause = ALREADY_NONCONSTANT
    else:
        rounds = 0
        while _core_is_constant(cur) and levels[-1] <= m:
            rounds += 1
            _check(rounds <= len(g.vertices), "reduction failed to terminate")
            blown = blow_up_core_marks(cur, tag=f"x{rounds}")
            if blown != cur:
                steps.append(_step(BLOW_UP, sorted(p for v in core(cur) for p in cur.vertex(v).marks), cur, blown))
            nxt = contract_core(blown)
            steps.append(_step(CONTRACT_CORE, sorted(core(blown)), blown, nxt))
            _check(nxt.multiplicity == levels[-1], "(v) multiplicity differs from the previous level")
            for v in nxt.vertices:
                _check(v.degree > 0 or distinguished_points(nxt, v.id) >= 2,
                       f"(iv) contracted component {v.id} has fewer than two distinguished points")
            new_level = level(nxt)
            if _core_is_constant(nxt):
                rich = any(distinguished_points(nxt, b) >= 3 for b in core(nxt))
                _check(new_level >= levels[-1], "(vi) level decreased")
                _check((new_level > levels[-1]) == rich, "(vi) strictness does not match core points")
            levels.append(new_level)
            cur = nxt
        cause = NONCONSTANT if not _core_is_constant(cur) else LEVEL_EXCEEDS

    final, stab = _stabilize(cur)
    steps.extend(stab)

    for s in steps:
        _check(s.after.report.ok, f"{s.kind} produced an invalid graph")
        _check(s.after.total_degree == degree, f"{s.kind} changed the total degree")
        _check(s.after.marks == marks, f"{s.kind} changed the mark set")
    if cause == LEVEL_EXCEEDS:
        _check(level(final) == levels[-1], "stabilization changed the level")
    verdict = is_m_stable_map(final, params)
    _check(verdict.stable, "reduction output is not m-stable: " + "; ".join(verdict.reasons()))
    return ReductionTrace(g, tuple(steps), final, cause, tuple(levels))


def trace_to_json(trace: ReductionTrace, *, indent: int | None = None) -> str:
    return json.dumps([s.to_dict() for s in trace.steps], indent=indent)
