import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from colorfix import (
    Coloring,
    ColorLists,
    FixInstance,
    Graph,
    MalformedInputError,
    changed_vertices,
    conflict_graph,
    distance,
    is_proper,
    matching_lower_bound,
)
from colorfix.graph import greedy_matching

from .conftest import complete, instances, path


def test_graph_dedups_and_normalizes():
    g = Graph(3, [(2, 1), (1, 2), (3, 2)])
    assert g.edges == ((1, 2), (2, 3))
    assert g.neighbors(2) == {1, 3}
    assert g.has_edge(2, 1) and not g.has_edge(1, 3)


@pytest.mark.parametrize("edges", [[(1, 1)], [(0, 1)], [(1, 4)]])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(MalformedInputError):
        Graph(3, edges)


def test_adjacency_symmetric():
    g = complete(4)
    for u, v in g.edges:
        assert u in g.neighbors(v) and v in g.neighbors(u)


def test_coloring_range_checked():
    with pytest.raises(MalformedInputError):
        Coloring((1, 3), 2)


def test_empty_list_rejected():
    with pytest.raises(MalformedInputError):
        ColorLists((frozenset({1}), frozenset()))


def test_is_proper_examples():
    edge = Graph(2, [(1, 2)])
    assert not is_proper(edge, Coloring((1, 1), 2))
    assert is_proper(edge, Coloring((1, 2), 2))
    single = Graph(1)
    assert not is_proper(single, Coloring((1,), 2), ColorLists((frozenset({2}),)))


def test_is_proper_missing_vertex():
    with pytest.raises(MalformedInputError):
        is_proper(Graph(3), Coloring((1, 1), 2))


def test_conflict_graph_examples():
    tri = complete(3)
    assert len(conflict_graph(tri, Coloring.uniform(3, 3))) == 3
    assert len(conflict_graph(tri, Coloring((1, 2, 3), 3))) == 0
    cg = conflict_graph(path(3), Coloring((1, 1, 2), 2))
    assert cg.edges == ((1, 2),) and cg.vertices == {1, 2}


def test_distance_examples():
    a = Coloring((1, 2, 3), 3)
    assert distance(a, a) == 0
    assert distance(a, Coloring((1, 2, 1), 3)) == 1
    assert distance(Coloring((1,) * 5, 2), Coloring((2,) * 5, 2)) == 5
    with pytest.raises(MalformedInputError):
        distance(a, Coloring((1, 2), 3))


def test_matching_lower_bound_examples():
    assert matching_lower_bound(path(3), Coloring((1, 2, 1), 2)) == 0
    assert matching_lower_bound(complete(3), Coloring.uniform(3, 3)) == 1
    two = Graph(4, [(1, 2), (3, 4)])
    assert matching_lower_bound(two, Coloring.uniform(4, 2)) == 2


def test_greedy_matching_is_maximal():
    edges = [(1, 2), (2, 3), (3, 4), (4, 5)]
    m = greedy_matching(edges)
    used = {x for e in m for x in e}
    assert all(u in used or v in used for u, v in edges)


colorings3 = st.lists(st.integers(1, 3), min_size=5, max_size=5).map(lambda c: Coloring(tuple(c), 3))


@given(colorings3, colorings3, colorings3)
def test_distance_is_a_metric(a, b, c):
    assert distance(a, b) >= 0
    assert (distance(a, b) == 0) == (a == b)
    assert distance(a, b) == distance(b, a)
    assert distance(a, c) <= distance(a, b) + distance(b, c)
    assert len(changed_vertices(a, b)) == distance(a, b)


@given(instances())
def test_proper_iff_no_conflicts(inst):
    g, phi = inst
    assert is_proper(g, phi) == (len(conflict_graph(g, phi)) == 0)


def test_recolored_set_covers_conflicts_exhaustively():
    # Any proper target differs from phi on a vertex cover of the conflict graph.
    g = complete(3)
    phi = Coloring((1, 1, 2), 3)
    conflicts = conflict_graph(g, phi).edges
    for colors in itertools.product(range(1, 4), repeat=3):
        target = Coloring(colors, 3)
        if is_proper(g, target):
            moved = changed_vertices(phi, target)
            assert all(u in moved or v in moved for u, v in conflicts)


def test_fix_instance_checks():
    g = path(2)
    with pytest.raises(MalformedInputError):
        FixInstance(g, Coloring((1,), 2), 2)
    with pytest.raises(MalformedInputError):
        FixInstance(g, Coloring((1, 1), 2), 2, lists=ColorLists((frozenset({3}), frozenset({1}))))
    with pytest.raises(MalformedInputError):
        FixInstance(g, Coloring((1, 1), 2), 2, k=-1)
