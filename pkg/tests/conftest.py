"""Shared oracles and strategies.

The oracles here deliberately avoid the package's bitset enumeration: they
go through networkx or plain recursive search over adjacency sets.
"""

import networkx as nx
import pytest
from hypothesis import strategies as st

from prcf.graph_core import Graph

ACCEPTANCE_LINES = []


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def from_nx(G: nx.Graph) -> Graph:
    nodes = sorted(G.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(idx[u], idx[v]) for u, v in G.edges()])


def nx_cycles(g: Graph, length_bound=None):
    """All simple cycles as frozensets of edge indices (networkx enumeration)."""
    out = []
    for cyc in nx.simple_cycles(to_nx(g), length_bound=length_bound):
        edges = frozenset(g.edge_id(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
        out.append(edges)
    return out


def brute_paths(g: Graph, k: int):
    """Every k-vertex path once, as a vertex tuple with first < last."""
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    out = []

    def grow(p):
        if len(p) == k:
            if p[0] < p[-1]:
                out.append(tuple(p))
            return
        for w in sorted(adj[p[-1]]):
            if w not in p:
                grow(p + [w])

    for v in range(g.n):
        grow([v])
    return out


def brute_extensions(g: Graph, k: int, length: int):
    """Per-path count of length-cycles containing it, via networkx cycles."""
    cycles = [c for c in nx_cycles(g, length) if len(c) == length]
    counts = []
    for p in brute_paths(g, k):
        pe = {g.edge_id(p[i], p[i + 1]) for i in range(k - 1)}
        counts.append(sum(1 for c in cycles if pe <= c))
    return counts


@st.composite
def graphs(draw, max_n=12, connected=False):
    n = draw(st.integers(min_value=1 if not connected else 2, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    if connected:
        # a random spanning path order keeps the graph connected
        perm = draw(st.permutations(range(n)))
        chosen = set(tuple(sorted(e)) for e in chosen)
        chosen |= {tuple(sorted((perm[i], perm[i + 1]))) for i in range(n - 1)}
        chosen = sorted(chosen)
    return Graph(n, chosen)


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""
    state = {}

    def record(label):
        state["label"] = label

    yield record
    label = state.get("label", request.node.name)
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    ACCEPTANCE_LINES.append(f"{status}  {label}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
