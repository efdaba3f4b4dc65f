"""Shared fixtures-as-functions and independent oracles for the test suite."""
from itertools import combinations

import networkx as nx

from mstable import graph


def smooth(degree=3, marks=()):
    return graph([("Z", 1, degree, marks)])


def u1():
    return graph([("Z", 1), ("R", 0, 3)], [("Z", "R")])


def u2():
    return graph([("Z", 1), ("R1", 0, 2), ("R2", 0, 1)], [("Z", "R1"), ("Z", "R2")])


def t0():
    return graph([("Z", 1), ("R1", 0, 1), ("R2", 0, 1), ("R3", 0, 1)],
                 [("Z", "R1"), ("Z", "R2"), ("Z", "R3")])


def cusp(degree=3, marks=()):
    return graph([("V", 0, degree, marks)], elliptic=["V"])


def tacnode(d1=2, d2=1):
    return graph([("B1", 0, d1), ("B2", 0, d2)], elliptic=["B1", "B2"])


def triple_point():
    return graph([("R1", 0, 1), ("R2", 0, 1), ("R3", 0, 1)], elliptic=["R1", "R2", "R3"])


def oracle_genus(g, vs):
    """Genus of a subcurve via the cycle rank of a graph with a star node.

    The elliptic point becomes an extra node joined to the branches present;
    it carries genus one only when every branch is present.
    """
    vs = set(vs)
    G = nx.MultiGraph()
    G.add_nodes_from(vs)
    G.add_edges_from((a, b) for a, b in g.edges if a in vs and b in vs)
    extra = 0
    if g.elliptic is not None:
        hit = [b for b in g.elliptic.branches if b in vs]
        if hit:
            G.add_edges_from(("*", b) for b in hit)
            extra = 1 if len(hit) == len(g.elliptic.branches) else 0
    if not nx.is_connected(G):
        return None
    b1 = G.number_of_edges() - G.number_of_nodes() + 1
    return sum(g.vertex(v).genus for v in vs) + b1 + extra


def oracle_subcurves(g):
    ids = g.ids
    return {frozenset(c) for k in range(1, len(ids) + 1) for c in combinations(ids, k)
            if oracle_genus(g, c) == 1}


def oracle_core(g):
    """Smallest connected genus-one subcurve."""
    subs = oracle_subcurves(g)
    return min(subs, key=len)
