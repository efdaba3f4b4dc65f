"""The ten acceptance criteria, each at its stated tolerance and time bound."""
import random
import time
from fractions import Fraction

import pytest

from mstable import (
    StabilityParams,
    arithmetic_genus,
    augment_with_hyperplane_marks,
    core,
    distinguished_points,
    genus_one_subcurves,
    graph,
    is_canonically_polarized,
    is_m_stable_curve,
    is_m_stable_map,
    level,
    polarization_power_bound,
    to_json,
)
from mstable.components import (
    PRINCIPAL,
    TangentData,
    component_dimension,
    enumerate_components,
    is_smoothable,
)
from mstable.corpus import exhaustive_graphs, random_corpus
from mstable.reduction import CONTRACT_CORE, LEVEL_EXCEEDS, NONCONSTANT, reduce
from mstable.stability import _automorphism_failures, _constant_map, boundary_count

import helpers
from acceptance_log import report
from test_components import brute_rank, star

CORPUS_SIZE = 1200
CORPUS_SEED = 20240


def stable(g, m):
    return is_m_stable_map(g, StabilityParams.of(g, m)).stable


# -- shared random corpus ----------------------------------------------------------


@pytest.fixture(scope="module")
def reductions():
    """Random minimal nodal limits, each reduced at a random m; timed for criterion 5."""
    rng = random.Random(CORPUS_SEED)
    t0 = time.perf_counter()
    inputs = random_corpus(CORPUS_SIZE, seed=CORPUS_SEED)
    runs, errors = [], []
    for g in inputs:
        m = rng.randint(0, 4)
        try:
            runs.append((g, m, reduce(g, StabilityParams.of(g, m))))
        except Exception as exc:  # any failure is a violation, reported below
            errors.append((to_json(g), m, repr(exc)))
    return runs, errors, time.perf_counter() - t0


@pytest.fixture(scope="module")
def corpus(reductions):
    """Inputs and outputs of the reductions, deduplicated."""
    runs, _, _ = reductions
    seen = {}
    for g, _, tr in runs:
        seen.setdefault(g, None)
        seen.setdefault(tr.final, None)
    return list(seen)


# -- 1, 2: plane cubics -------------------------------------------------------------


def test_criterion_1_plane_cubic_counts():
    t = time.perf_counter()
    counts = [len(enumerate_components(StabilityParams(m, 0, 2, 3))) for m in range(4)]
    report(1, "plane-cubic component counts", counts == [3, 2, 1, 1],
           f"counts for m=0..3 are {counts}", time.perf_counter() - t, 1)


def test_criterion_2_plane_cubic_dimensions():
    t = time.perf_counter()
    params = StabilityParams(0, 0, 2, 3)
    dims = {(c.kind, c.partition): component_dimension(c, params) for c in enumerate_components(params)}
    expected = {(PRINCIPAL, ()): 9, ("boundary", (3,)): 10, ("boundary", (2, 1)): 9}
    report(2, "plane-cubic dimensions", dims == expected,
           f"principal {dims.get((PRINCIPAL, ()))}, {{3}} {dims.get(('boundary', (3,)))}, "
           f"{{2,1}} {dims.get(('boundary', (2, 1)))}", time.perf_counter() - t, 1)


# -- 3: reduction goldens -----------------------------------------------------------------


GOLDENS = [
    (helpers.u1(), 1, graph([("R", 0, 3)], elliptic=["R"])),
    (helpers.u2(), 2, graph([("R1", 0, 2), ("R2", 0, 1)], elliptic=["R1", "R2"])),
    (helpers.t0(), 3, helpers.triple_point()),
]


def test_criterion_3_reduction_goldens():
    worst, ok, notes = 0.0, True, []
    for g, m, want in GOLDENS:
        t = time.perf_counter()
        tr = reduce(g, StabilityParams.of(g, m))
        good = to_json(tr.final) == to_json(want) and stable(tr.final, m)
        worst = max(worst, time.perf_counter() - t)
        ok &= good
        notes.append(f"m={m} l={tr.final.multiplicity}{'' if good else ' MISMATCH'}")
    report(3, "reduction goldens", ok, ", ".join(notes) + "; time is the slowest run", worst, 1)


# -- 4: minimal subcurve versus every subcurve ----------------------------------------------


def _hypothesis(g):
    return all(distinguished_points(g, v.id) >= 2 for v in g.vertices if v.genus == 0)


def test_criterion_4_level_versus_all_subcurves():
    t = time.perf_counter()
    checked = disagreements = 0
    example = None
    for g in exhaustive_graphs(6, 2, 3):
        if not _hypothesis(g):
            continue
        checked += 1
        subs = genus_one_subcurves(g)
        lv = level(g)
        contracted = [e for e in subs if all(g.vertex(v).degree == 0 for v in e)]
        top = max(lv, *(boundary_count(g, e) for e in subs)) + 1
        for m in range(top + 1):
            # curve mode: every subcurve counts
            by_level = lv > m
            by_all = all(boundary_count(g, e) > m for e in subs)
            bad = by_level != by_all
            if m < g.n:
                bad |= ("2" not in is_m_stable_curve(g, m, g.n).clauses) != by_all
            # map mode: only subcurves the map contracts
            if g.total_degree >= 1:
                core_constant = all(g.vertex(v).degree == 0 for v in core(g))
                by_level = not core_constant or lv > m
                by_all = all(boundary_count(g, e) > m for e in contracted)
                bad |= by_level != by_all
                bad |= ("2" not in is_m_stable_map(g, StabilityParams.of(g, m)).clauses) != by_all
            if bad:
                disagreements += 1
                example = example or (to_json(g), m)
    report(4, "level test agrees with all genus-one subcurves", disagreements == 0 and checked > 0,
           f"{checked} graphs, {disagreements} disagreements" + (f", e.g. {example}" if example else ""),
           time.perf_counter() - t, 60)


# -- 5: reduction invariants -----------------------------------------------------------------


def _trace_violations(g, m, tr):
    out = []
    graphs = [g] + [s.after for s in tr.steps]
    for h in graphs:
        if arithmetic_genus(h) != 1:
            out.append("genus")
        if h.total_degree != g.total_degree:
            out.append("degree")
        if h.marks != g.marks:
            out.append("marks")
    constant = tr.levels[:-1] if tr.cause == NONCONSTANT else tr.levels
    if list(constant) != sorted(constant):
        out.append("levels decreased")
    for i, s in enumerate(s for s in tr.steps if s.kind == CONTRACT_CORE):
        if s.multiplicity_after != tr.levels[i]:
            out.append("condition (v)")
    if not stable(tr.final, m):
        out.append("output unstable")
    if tr.cause == LEVEL_EXCEEDS and level(tr.final) != tr.levels[-1]:
        out.append("e-case level")
    return out


def test_criterion_5_reduction_invariants(reductions):
    runs, errors, elapsed = reductions
    t = time.perf_counter()
    bad = [(to_json(g), m, v) for g, m, tr in runs for v in _trace_violations(g, m, tr)]
    bad += errors
    elapsed += time.perf_counter() - t
    rounds = sum(tr.contractions for _, _, tr in runs)
    report(5, "reduction invariants", len(runs) + len(errors) >= 1000 and not bad,
           f"{len(runs) + len(errors)} traces, {rounds} contractions, {len(bad)} violations"
           + (f", e.g. {bad[0]}" if bad else ""), elapsed, 120)


# -- 6: stabilization threshold ------------------------------------------------------------------


def test_criterion_6_stabilization_threshold(corpus):
    t = time.perf_counter()
    bad = []
    for g in corpus:
        base = g.total_degree + g.n
        verdicts = {stable(g, m) for m in range(base, base + 6)}
        primed = (
            g.multiplicity <= base
            and any(g.vertex(v).degree for v in core(g))
            and not _automorphism_failures(g, _constant_map)
        )
        if verdicts != {primed}:
            bad.append(to_json(g))
    report(6, "stability constant for m >= d+n", not bad,
           f"{len(corpus)} graphs x 6 values of m, {len(bad)} violations", time.perf_counter() - t, 60)


# -- 7: irreducibility -----------------------------------------------------------------------------


def test_criterion_7_irreducibility():
    t = time.perf_counter()
    bad = []
    cases = 0
    for n in range(4):
        for r in range(1, 5):
            for d in range(1, 5):
                bound = min(r, d) + n
                counts = [len(enumerate_components(StabilityParams(m, n, r, d))) for m in range(bound + 3)]
                cases += 1
                if counts != sorted(counts, reverse=True) or set(counts[bound:]) != {1}:
                    bad.append((n, r, d, counts))
    report(7, "irreducible from m = min(r,d)+n", not bad,
           f"{cases} (n,r,d) triples, {len(bad)} violations", time.perf_counter() - t, 10)


# -- 8: augmentation --------------------------------------------------------------------------------


def test_criterion_8_augmentation(corpus):
    t = time.perf_counter()
    bad, checked = [], 0
    for g in corpus:
        for m in range(1, 6):
            if not stable(g, m):
                continue
            checked += 1
            a = augment_with_hyperplane_marks(g, m)
            n = g.n + g.total_degree * (m + 1)
            if a.n != n or not is_m_stable_curve(a, m, n):
                bad.append((to_json(g), m))
    report(8, "hyperplane augmentation gives m-stable curves (m >= 1)", checked > 0 and not bad,
           f"{checked} stable (graph, m) pairs, {len(bad)} violations", time.perf_counter() - t, 60)


# -- 9: polarization ----------------------------------------------------------------------------------


def test_criterion_9_polarization(corpus):
    t = time.perf_counter()
    bad, checked = [], 0
    for g in corpus:
        if any(stable(g, m) for m in range(0, 8)):
            checked += 1
            if not is_canonically_polarized(g):
                bad.append(to_json(g))
    grid = [(m, n) for m in range(12) for n in range(12)
            if polarization_power_bound(m, n) != n + max(2 * m, 4) + 1]
    report(9, "stable graphs are polarized; power bound", checked > 0 and not bad and not grid,
           f"{checked} stable graphs, {len(bad)} unpolarized, {len(grid)} grid mismatches",
           time.perf_counter() - t, 10)


# -- 10: smoothability rank oracle ------------------------------------------------------------------------


def _random_vector(rng, r):
    v = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(r)]
    if not any(v):
        v[rng.randrange(r)] = Fraction(1)
    return v


def test_criterion_10_smoothability_rank():
    t = time.perf_counter()
    rng = random.Random(10)
    bad = 0
    for i in range(500):
        l, r = rng.randint(1, 5), rng.randint(1, 5)
        vecs = [_random_vector(rng, r) for _ in range(l)]
        # force dependence in a third of the cases
        if i % 3 == 0 and l >= 2:
            a, b = rng.sample(range(l), 2)
            c = Fraction(rng.randint(1, 5), rng.randint(1, 5))
            vecs[a] = [c * x for x in vecs[b]]
        g = star(l, r)
        if is_smoothable(g, TangentData.of([[str(x) for x in v] for v in vecs])) != (brute_rank(vecs) < l):
            bad += 1
        if is_smoothable(g) != (l > r):
            bad += 1
    report(10, "smoothability agrees with a minors rank oracle", bad == 0,
           f"500 tangent sets, {bad} disagreements", time.perf_counter() - t, 10)
