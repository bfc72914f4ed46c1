import random

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs, to_nx
from prcf.families import complete, cycle, hoffman_singleton, path, petersen, pg_incidence, subdivide
from prcf.graph_core import Graph, GraphError, bipartition, classify, diameter, girth


def test_rejects_loops_and_multi_edges():
    with pytest.raises(GraphError):
        Graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 2)])


def test_adjacency_consistent_with_edges():
    g = petersen()
    seen = {}
    for v, row in enumerate(g.adjacency):
        assert list(row) == sorted(row)
        for w, e in row:
            assert set(g.edges[e]) == {v, w}
            seen[e] = seen.get(e, 0) + 1
    assert seen == {e: 2 for e in range(g.m)}


@pytest.mark.parametrize(
    "g, expected",
    [(cycle(5), 5), (hoffman_singleton(), 5), (subdivide(petersen(), 1).graph, 10), (path(6), None)],
)
def test_girth_examples(g, expected):
    assert girth(g) == expected


@pytest.mark.parametrize("g, expected", [(cycle(5), 2), (hoffman_singleton(), 2), (pg_incidence(2), 3)])
def test_diameter_examples(g, expected):
    assert diameter(g) == expected


def test_disconnected_diameter_and_girth():
    g = Graph(8, cycle(5).edges + ((5, 6),))
    assert diameter(g) is None
    assert girth(g) == 5
    with pytest.raises(GraphError):
        classify(g)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=11))
def test_girth_matches_networkx(g):
    expected = nx.girth(to_nx(g))
    assert girth(g) == (None if expected == float("inf") else expected)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=11, connected=True))
def test_diameter_matches_networkx(g):
    assert diameter(g) == nx.diameter(to_nx(g))


def test_diameter_invariant_under_relabeling():
    g = pg_incidence(3)
    perm = list(range(g.n))
    random.Random(7).shuffle(perm)
    assert diameter(g.relabel(perm)) == diameter(g) == 3


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9, connected=True))
def test_subdivision_multiplies_girth(g):
    base = girth(g)
    for k in (1, 2, 3):
        sub = subdivide(g, k).graph
        assert girth(sub) == (None if base is None else (k + 1) * base)


def test_classify_examples():
    hs = classify(hoffman_singleton())
    assert hs.is_moore and hs.diameter == 2 and hs.regular_degree == 7 and hs.thick
    assert hs.describe() == "Moore(d=2, r=7)"

    pg = classify(pg_incidence(2))
    assert pg.is_polygon and pg.diameter == 3 and pg.degree_set == (3,) and pg.thick
    assert pg.bipartition is not None

    c6 = classify(cycle(6))
    assert c6.is_polygon and c6.degree_set == (2,) and not c6.thick


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10, connected=True))
def test_classify_tags_are_exclusive_and_consistent(g):
    if g.n < 3:
        return
    info = classify(g)
    assert not (info.is_moore and info.is_polygon)
    if info.is_moore:
        assert info.girth == 2 * info.diameter + 1 and info.regular_degree is not None
    if info.is_polygon:
        assert info.girth == 2 * info.diameter
    assert info.thick == (min(g.degrees) >= 3)


def test_bipartition_of_odd_cycle_is_none():
    assert bipartition(cycle(7)) is None
    a, b = bipartition(cycle(8))
    assert len(a) == len(b) == 4


def test_complete_graph_is_moore_with_diameter_one():
    info = classify(complete(4))
    assert info.is_moore and info.diameter == 1 and info.girth == 3
