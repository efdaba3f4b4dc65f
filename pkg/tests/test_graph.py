import json

import pytest
from hypothesis import given

from mstable import (
    DualGraph,
    SchemaError,
    Vertex,
    arithmetic_genus,
    from_json,
    graph,
    to_dict,
    to_dot,
    to_json,
    validate,
)
from mstable.corpus import shapes

import helpers
from strategies import genus_one_graphs


def test_smooth_elliptic_is_valid():
    assert validate(helpers.smooth()).ok


def test_ring_of_two_lines_is_valid_genus_one():
    g = graph([("A", 0, 1), ("B", 0, 1)], [("A", "B"), ("A", "B")])
    assert validate(g).ok
    assert arithmetic_genus(g) == 1


def test_genus_one_vertex_plus_cusp_is_genus_two():
    g = graph([("Z", 1), ("V", 0, 1)], [("Z", "V")], elliptic=["V"])
    rep = validate(g)
    assert not rep.ok
    assert "genus" in rep.codes()
    assert "elliptic-with-genus-one" in rep.codes()


@pytest.mark.parametrize("g, expected", [
    (graph([("A", 0, 1)], [("A", "A")]), 1),
    (helpers.cusp(), 1),
    (graph([("A",), ("B",), ("C",)], [("A", "B"), ("B", "C")]), 0),
])
def test_arithmetic_genus(g, expected):
    assert arithmetic_genus(g) == expected


def test_arithmetic_genus_rejects_disconnected():
    with pytest.raises(ValueError):
        arithmetic_genus(graph([("A", 1), ("B", 0)]))


@pytest.mark.parametrize("g, code", [
    (graph([]), "empty"),
    (graph([("A", 2, 1)]), "vertex-genus"),
    (graph([("A", 1, -1)]), "vertex-degree"),
    (graph([("A", 1, 0, ["p"]), ("B", 0, 1, ["p"])], [("A", "B")]), "duplicate-mark"),
    (graph([("A", 1)], [("A", "X")]), "dangling-edge"),
    (graph([("A", 1), ("A", 0)]), "duplicate-vertex"),
    (graph([("A", 0, 1), ("B", 0, 1)], [("A", "B"), ("A", "B")], elliptic=["A"]), "elliptic-cycle"),
    (graph([("A", 0, 1)], elliptic=["A", "A"]), "elliptic-duplicate-branch"),
    (graph([("A", 0, 1)], elliptic=["B"]), "elliptic-unknown-branch"),
    (graph([("A", 1, 0), ("B", 1, 0)]), "disconnected"),
    (graph([("A", 1, 1)], r=0), "target-dimension"),
])
def test_validation_codes(g, code):
    assert code in validate(g).codes()


def test_degree_zero_only_flagged_in_map_mode():
    g = helpers.smooth(degree=0, marks=["p1"])
    assert validate(g).ok
    assert "degree-zero" in validate(g, require_degree=True).codes()


def test_every_generated_shape_is_valid():
    for s in shapes(5):
        assert validate(s.to_graph()).ok


def test_normalisation_makes_equality_canonical():
    a = graph([("B", 0, 1), ("A", 1, 0, ["q", "p"])], [("B", "A")])
    b = graph([("A", 1, 0, ["p", "q"]), ("B", 0, 1)], [("A", "B")])
    assert a == b
    assert hash(a) == hash(b)
    assert to_json(a) == to_json(b)


def test_json_layout_is_fixed():
    g = graph([("Z", 1, 0, ["p2", "p1"]), ("R", 0, 3)], [("Z", "R")])
    assert to_json(g) == (
        '{"r": 2, "vertices": ['
        '{"id": "R", "genus": 0, "degree": 3, "marks": []}, '
        '{"id": "Z", "genus": 1, "degree": 0, "marks": ["p1", "p2"]}], '
        '"edges": [["R", "Z"]], "elliptic": null}'
    )
    assert json.loads(to_json(helpers.tacnode()))["elliptic"] == {"branches": ["B1", "B2"]}


@given(genus_one_graphs())
def test_round_trip(g):
    text = to_json(g)
    back = from_json(text)
    assert back == g
    assert to_json(back) == text


@pytest.mark.parametrize("text", [
    "",
    "{}",
    "[]",
    '{"r": 2, "vertices": [], "edges": []}',
    '{"r": true, "vertices": [], "edges": [], "elliptic": null}',
    '{"r": 2, "vertices": [{"id": "A", "genus": 1, "degree": 0}], "edges": [], "elliptic": null}',
    '{"r": 2, "vertices": [{"id": 1, "genus": 1, "degree": 0, "marks": []}], "edges": [], "elliptic": null}',
    '{"r": 2, "vertices": [], "edges": [["A"]], "elliptic": null}',
    '{"r": 2, "vertices": [], "edges": [], "elliptic": {"branches": [3]}}',
    '{"r": 2, "vertices": [], "edges": [], "elliptic": null, "extra": 1}',
])
def test_schema_errors(text):
    with pytest.raises(SchemaError):
        from_json(text)


def test_dot_draws_star_loops_and_marks():
    g = graph([("A", 0, 1, ["p1"]), ("B", 0, 0, ["p2"])], [("A", "B")], elliptic=["B"])
    dot = to_dot(g)
    assert '"__elliptic" [shape=star, label="E_1"]' in dot
    assert '"__elliptic" -- "B"' in dot
    assert '"A" -- "__mark_p1"' in dot
    loop = to_dot(graph([("A", 0, 1)], [("A", "A")]))
    assert '"A" -- "A";' in loop


def test_vertex_lookup_errors():
    g = helpers.u1()
    with pytest.raises(KeyError):
        g.vertex("nope")
    assert "Z" in g and "nope" not in g
    assert isinstance(g.vertex("Z"), Vertex)
    assert isinstance(DualGraph((Vertex("A", 1),)), DualGraph)
    assert to_dict(g)["edges"] == [["R", "Z"]]
