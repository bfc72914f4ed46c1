import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_extensions, brute_paths, graphs, nx_cycles
from prcf.budget import Budget, BudgetExceeded
from prcf.census import (
    census,
    count_cycles,
    count_paths,
    coverage_ratio,
    cycles_through_vertex,
    path_order_for_girth,
    unique_extension,
)
from prcf.families import cycle, hoffman_singleton, petersen, pg_incidence, subdivide
from prcf.graph_core import GraphError


@pytest.mark.parametrize("g, k", [(5, 4), (12, 8), (16, 10), (6, 5), (3, 3), (4, 4)])
def test_path_order_for_girth(g, k):
    assert path_order_for_girth(g) == k


def test_count_paths_examples():
    assert count_paths(hoffman_singleton(), 4) == 6300
    assert count_paths(cycle(5), 4) == 5
    heawood = pg_incidence(2)
    assert count_paths(heawood, 5) == 168 == len(brute_paths(heawood, 5))
    assert 168 == Fraction(14 * 3 * 2**3, 2)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11])
def test_count_paths_closed_form_for_pg(q):
    g = pg_incidence(q)
    r = q + 1
    assert count_paths(g, 5) == g.n * r * (r - 1) ** 3 // 2


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9), st.integers(min_value=2, max_value=5))
def test_count_paths_matches_brute_force(g, k):
    assert count_paths(g, k) == len(brute_paths(g, k))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8), st.integers(min_value=3, max_value=8))
def test_count_cycles_matches_networkx(g, length):
    expected = sum(1 for c in nx_cycles(g, length) if len(c) == length)
    assert count_cycles(g, length) == expected


def test_count_cycles_examples():
    assert count_cycles(hoffman_singleton(), 5) == 1260
    assert count_cycles(cycle(5), 5) == 1
    assert count_cycles(pg_incidence(2), 6) == 28


def test_cycles_through_vertex_examples():
    hs = hoffman_singleton()
    assert {cycles_through_vertex(hs, v, 5) for v in range(hs.n)} == {126}
    assert cycles_through_vertex(cycle(5), 3, 5) == 1
    assert {cycles_through_vertex(petersen(), v, 5) for v in range(10)} == {6}


def test_unique_extension_examples():
    assert unique_extension(hoffman_singleton(), 4, 5) == (1, 1)
    ex = brute_extensions(petersen(), 4, 5)
    assert (min(ex), max(ex)) == (1, 1) == unique_extension(petersen(), 4, 5)
    ex = brute_extensions(pg_incidence(2), 5, 6)
    assert len(ex) == 168
    assert (min(ex), max(ex)) == (1, 1) == unique_extension(pg_incidence(2), 5, 6)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.integers(min_value=2, max_value=4), st.integers(min_value=3, max_value=7))
def test_extension_statistics_match_brute_force(g, k, length):
    if length <= k - 1:
        return
    ex = brute_extensions(g, k, length)
    if not ex:
        with pytest.raises(GraphError):
            unique_extension(g, k, length)
        return
    assert unique_extension(g, k, length) == (min(ex), max(ex))
    assert coverage_ratio(g, k, length) == Fraction(sum(1 for x in ex if x), len(ex))


def test_coverage_ratio_examples():
    assert coverage_ratio(hoffman_singleton(), 4, 5) == 1
    assert coverage_ratio(cycle(6), 5, 6) == 1
    sub = subdivide(petersen(), 1).graph
    # frozen from brute_extensions: every P4 lies on two decagons, P7s only on some
    assert coverage_ratio(sub, 4, 10) == 1
    assert coverage_ratio(sub, 7, 10) == Fraction(2, 3)


def test_census_report_fields():
    rep = census(hoffman_singleton())
    assert (rep.k, rep.g) == (4, 5)
    assert rep.path_count == 6300 and rep.cycle_count == 1260
    assert rep.unique and rep.covered_path_count == rep.path_count
    # each 5-cycle holds 5 P4 windows
    assert rep.cycle_count * 5 == rep.incidences == 6300
    assert rep.as_dict()["coverage_ratio"] == "1/1"


def test_census_invariants_on_non_unique_graph():
    rep = census(subdivide(petersen(), 1).graph)
    assert 0 <= rep.covered_path_count <= rep.path_count
    assert rep.extension_min <= rep.extension_max
    assert rep.coverage_ratio == Fraction(2, 3)


def test_relabeling_invariance():
    g = pg_incidence(3)
    perm = list(range(g.n))
    random.Random(3).shuffle(perm)
    h = g.relabel(perm)
    a, b = census(g), census(h)
    for field in ("path_count", "cycle_count", "extension_min", "extension_max", "covered_path_count", "coverage_ratio"):
        assert getattr(a, field) == getattr(b, field)


@pytest.mark.parametrize("workers", [2, 3])
def test_parallel_matches_sequential(workers):
    g = pg_incidence(3)
    seq = census(g, workers=1)
    par = census(g, workers=workers)
    assert (seq.path_count, seq.cycle_count, seq.extension_min, seq.extension_max, seq.covered_path_count) == (
        par.path_count, par.cycle_count, par.extension_min, par.extension_max, par.covered_path_count
    )
    assert seq.nodes == par.nodes
    assert count_paths(g, 6, workers=workers) == count_paths(g, 6)
    assert count_cycles(g, 8, workers=workers) == count_cycles(g, 8)


def test_budget_exceeded_is_loud():
    with pytest.raises(BudgetExceeded):
        count_cycles(pg_incidence(5), 12, budget=Budget(max_nodes=1000))
    with pytest.raises(BudgetExceeded):
        census(pg_incidence(3), budget=Budget(max_nodes=50), workers=2)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        count_paths(petersen(), 1)
    with pytest.raises(ValueError):
        count_cycles(petersen(), 2)
    with pytest.raises(ValueError):
        unique_extension(petersen(), 5, 4)
