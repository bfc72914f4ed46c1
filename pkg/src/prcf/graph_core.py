"""Immutable simple graphs and their exact structural metrics."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or unmet structural preconditions."""


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v``; edge ``i`` is ``edges[i]``.
    ``adjacency[v]`` is a sorted tuple of ``(neighbor, edge_index)`` pairs.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        normalized = []
        seen = set()
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"multi-edge {e}")
            seen.add(e)
            normalized.append(e)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        self.adjacency: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            tuple(sorted(a)) for a in adj
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __getstate__(self):
        return {"n": self.n, "edges": self.edges}

    def __setstate__(self, state):
        self.__init__(state["n"], state["edges"])

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Adjacency rows as Python int bitsets."""
        masks = []
        for a in self.adjacency:
            mask = 0
            for w, _ in a:
                mask |= 1 << w
            masks.append(mask)
        return tuple(masks)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(u, v) if u < v else (v, u)]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``, edge order kept."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of the vertices")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices``; returns it with the old-index table."""
        keep = sorted(set(vertices))
        new = {v: i for i, v in enumerate(keep)}
        edges = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        return Graph(len(keep), edges), keep


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w, _ in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w, _ in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or ``None`` for a forest.

    A BFS from every root; a non-tree edge ``uw`` closes a closed walk of
    length ``dist[u] + dist[w] + 1`` through the root, and the minimum of these
    over all roots is exactly the girth.
    """
    best = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent_edge = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w, e in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent_edge[w] = e
                    queue.append(w)
                elif e != parent_edge[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def diameter(g: Graph) -> Optional[int]:
    """Largest eccentricity, or ``None`` if some pair is unreachable."""
    best = 0
    for s in range(g.n):
        dist = bfs_distances(g, s)
        if min(dist, default=0) < 0:
            return None
        best = max(best, max(dist))
    return best


def bipartition(g: Graph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Two-coloring ``(A, B)`` with vertex 0's side first, or ``None`` if odd cycle."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w, _ in g.adjacency[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    a = frozenset(v for v in range(g.n) if side[v] == 0)
    b = frozenset(v for v in range(g.n) if side[v] == 1)
    return a, b


@dataclass(frozen=True)
class StructureClass:
    """Moore / generalized-polygon classification of a connected graph.

    ``tag`` is ``"moore"``, ``"polygon"`` or ``"neither"``. For Moore graphs
    ``regular_degree`` is set; for polygons ``degree_set`` lists the distinct
    degrees (one value if regular, two for a semiregular bipartite polygon).
    """

    tag: str
    diameter: int
    girth: Optional[int]
    thick: bool
    degree_set: tuple[int, ...]
    regular_degree: Optional[int] = None
    bipartition: Optional[tuple[frozenset[int], frozenset[int]]] = field(
        default=None, repr=False
    )

    @property
    def is_moore(self) -> bool:
        return self.tag == "moore"

    @property
    def is_polygon(self) -> bool:
        return self.tag == "polygon"

    def describe(self) -> str:
        if self.is_moore:
            return f"Moore(d={self.diameter}, r={self.regular_degree})"
        if self.is_polygon:
            degs = ",".join(map(str, self.degree_set))
            return f"GeneralizedPolygon(d={self.diameter}, {{{degs}}})"
        return "Neither"


def classify(g: Graph) -> StructureClass:
    if g.n < 3:
        raise GraphError("classify needs at least 3 vertices")
    d = diameter(g)
    if d is None:
        raise GraphError("classify requires a connected graph")
    gi = girth(g)
    degs = tuple(sorted(set(g.degrees)))
    regular = degs[0] if len(degs) == 1 else None
    thick = degs[0] >= 3
    parts = bipartition(g)
    if gi is not None and gi == 2 * d + 1 and regular is not None:
        tag = "moore"
    elif gi is not None and gi == 2 * d:
        tag = "polygon"
    else:
        tag = "neither"
    return StructureClass(
        tag=tag,
        diameter=d,
        girth=gi,
        thick=thick,
        degree_set=degs,
        regular_degree=regular,
        bipartition=parts,
    )
