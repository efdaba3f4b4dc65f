"""Hypothesis strategies for decorated genus-one graphs."""
from hypothesis import strategies as st

from mstable.corpus import random_nodal_graph, shapes

SHAPES = shapes(5)


@st.composite
def genus_one_graphs(draw, max_marks=3, max_degree=3, min_total=0):
    """Any valid genus-one graph on at most five components, elliptic points included."""
    s = draw(st.sampled_from(SHAPES))
    degrees = draw(st.lists(st.integers(0, max_degree), min_size=s.size, max_size=s.size))
    if sum(degrees) < min_total:
        degrees[draw(st.integers(0, s.size - 1))] += min_total
    k = draw(st.integers(0, max_marks))
    where = draw(st.lists(st.integers(0, s.size - 1), min_size=k, max_size=k))
    marks = [[] for _ in range(s.size)]
    for i, w in enumerate(where, start=1):
        marks[w].append(f"p{i}")
    return s.to_graph(degrees, marks, draw(st.integers(1, 4)))


def map_graphs(**kw):
    return genus_one_graphs(min_total=1, **kw)


@st.composite
def nodal_limits(draw):
    """Minimal nodal limits as fed to the reduction."""
    return random_nodal_graph(draw(st.randoms(use_true_random=False)))
