import pytest

from quivergrass.core import Params
from quivergrass.moment_graph import (
    Character,
    MoveError,
    apply_move,
    build_graph,
    check_rotation_equivariance,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    rotate_tuple,
)
from conftest import guarded_triples, workspace

SMALL_TRIPLES = [t for t in guarded_triples(6) if t[1] * t[2] <= 6]


def test_apply_move_examples():
    p = Params(1, 2, 2)
    assert apply_move(p, (4, 0), 1, 2, 3) == (1, 3)
    assert apply_move(Params(1, 2, 1), (2, 0), 1, 2, 1) == (1, 1)
    assert apply_move(p, (3, 1), 1, 2, 1) == (2, 2)
    # r = 0 leaves the tuple unchanged (whole-period move of zero boxes)
    assert apply_move(p, (3, 1), 1, 2, 0) == (3, 1)


def test_apply_move_errors_name_the_condition():
    p = Params(1, 2, 2)
    with pytest.raises(MoveError, match="feasible range"):
        apply_move(p, (4, 0), 1, 2, 5)
    with pytest.raises(MoveError, match="alignment"):
        apply_move(Params(1, 3, 1), (3, 0, 0), 1, 2, 1)
    with pytest.raises(MoveError, match="distinct vertices"):
        apply_move(p, (4, 0), 1, 1, 0)
    # whole-period moves preserve the residue structure and stay feasible
    assert apply_move(p, (4, 0), 1, 2, 2) == (2, 2)


def test_graph_1_2_2_matches_reference_figure():
    g = workspace(1, 2, 2).graph
    assert len(g.vertices) == 5
    assert len(g.edges) == 6
    def edge(src, tgt):
        e = g.edge_between(src, tgt)
        assert e is not None, (src, tgt)
        return str(e.label)

    assert edge((4, 0), (1, 3)) == "e2-e1+d"
    assert edge((4, 0), (3, 1)) == "e2-e1+3d"
    assert edge((0, 4), (1, 3)) == "e1-e2+3d"
    assert edge((0, 4), (3, 1)) == "e1-e2+d"
    assert edge((3, 1), (2, 2)) == "e2-e1+d"
    assert edge((1, 3), (2, 2)) == "e1-e2+d"
    assert g.edge_between((4, 0), (0, 4)) is None
    assert g.edge_between((0, 4), (4, 0)) is None


def test_graph_1_2_1():
    g = build_graph(Params(1, 2, 1))
    assert len(g.vertices) == 3
    assert {(g.vertices[e.source], g.vertices[e.target]) for e in g.edges} == {
        ((2, 0), (1, 1)),
        ((0, 2), (1, 1)),
    }


def test_graph_single_vertex():
    g = build_graph(Params(3, 3, 1))
    assert len(g.vertices) == 1 and not g.edges


@pytest.mark.parametrize("trip", SMALL_TRIPLES)
def test_outdegree_and_labels(trip):
    ws = workspace(*trip)
    g = ws.graph
    for i, v in enumerate(g.vertices):
        assert len(g.out_edges[i]) == ws.lengths[i]
    seen_pairs = set()
    for e in g.edges:
        assert e.label.delta >= 1
        assert sorted(e.label.eps) == sorted([1, -1] + [0] * (ws.p.n - 2)) or ws.p.n == 1
        assert (e.source, e.target) not in seen_pairs
        seen_pairs.add((e.source, e.target))
        i, j, r = e.move
        src = g.vertices[e.source]
        assert e.label.delta == src[i - 1] - src[j - 1] - r >= 1


@pytest.mark.parametrize("trip", SMALL_TRIPLES)
def test_lower_sets_are_closed_under_edges(trip):
    from quivergrass.order import cell_lower_set
    from quivergrass.core import component_fixed_point, component_subsets, jug_to_lengths

    ws = workspace(*trip)
    g = ws.graph
    for subset in component_subsets(ws.p)[:3]:
        jug = component_fixed_point(ws.p, subset)
        lower = {jug_to_lengths(ws.p, j) for j in cell_lower_set(ws.p, jug)}
        for v in lower:
            for e in g.out_edges[g.index[v]]:
                assert g.vertices[e.target] in lower


def test_rotate_tuple():
    assert rotate_tuple(1, (4, 0)) == (0, 4)
    assert rotate_tuple(0, (1, 2, 3)) == (1, 2, 3)
    assert rotate_tuple(3, (1, 2, 3)) == (1, 2, 3)
    assert rotate_tuple(1, (1, 2, 3)) == (3, 1, 2)


@pytest.mark.parametrize("trip", SMALL_TRIPLES)
def test_rotation_equivariance(trip):
    report = check_rotation_equivariance(workspace(*trip).graph)
    assert report.ok, report.violation


def test_character_rendering():
    assert str(Character((-1, 1), 3)) == "e2-e1+3d"
    assert str(Character((1, -1), 1)) == "e1-e2+d"
    assert str(Character((0, 0), 0)) == "0"
    assert str(Character((2, -2), -1)) == "2e1-2e2-d"


def test_dot_export_counts():
    g = workspace(1, 2, 2).graph
    dot = graph_to_dot(g)
    lines = dot.strip().splitlines()
    node_lines = [l for l in lines if l.strip().endswith('";')]
    edge_lines = [l for l in lines if "->" in l]
    assert len(node_lines) == 5
    assert len(edge_lines) == 6
    assert '"(4,0)" -> "(1,3)" [label="e2-e1+d"];' in dot
    # edge-free graph still renders all nodes
    dot0 = graph_to_dot(build_graph(Params(2, 2, 1)))
    assert "->" not in dot0 and '"(2,2)"' in dot0


def test_json_roundtrip():
    g = workspace(1, 3, 2).graph
    text = graph_to_json(g)
    back = graph_from_json(text)
    assert back.params == g.params
    assert back.vertices == g.vertices
    assert back.edges == g.edges
    assert graph_to_json(back) == text
    with pytest.raises(ValueError):
        graph_from_json('{"schema": "something/else"}')
