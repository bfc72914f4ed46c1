"""Deterministic constructors for the graph families under study."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .graph_core import Graph, GraphError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with sides ``0..m-1`` and ``m..m+n-1``."""
    if m < 1 or n < 1:
        raise GraphError(f"complete bipartite needs m, n >= 1, got ({m}, {n})")
    return Graph(m + n, [(a, m + b) for a in range(m) for b in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def hoffman_singleton() -> Graph:
    """Pentagon/pentagram construction.

    Pentagon ``P_h`` vertex ``j`` is ``5h + j``; pentagram ``Q_i`` vertex ``j``
    is ``25 + 5i + j``. ``P_h[j]`` is joined to ``Q_i[(h*i + j) % 5]``.
    """
    edges = []
    for h in range(5):
        edges.extend((5 * h + j, 5 * h + (j + 1) % 5) for j in range(5))
    for i in range(5):
        edges.extend((25 + 5 * i + j, 25 + 5 * i + (j + 2) % 5) for j in range(5))
    for h in range(5):
        for j in range(5):
            for i in range(5):
                edges.append((5 * h + j, 25 + 5 * i + (h * i + j) % 5))
    return Graph(50, edges)


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    """Nonzero vectors of GF(q)^3 whose first nonzero coordinate is 1."""
    pts = []
    for v in product(range(q), repeat=3):
        lead = next((x for x in v if x), 0)
        if lead == 1:
            pts.append(v)
    return pts


def pg_incidence(q: int) -> Graph:
    """Point-line incidence graph of PG(2, q) for prime ``q``.

    Points occupy ``0..N-1`` and lines ``N..2N-1`` with ``N = q^2 + q + 1``;
    a line is the kernel of a normalized linear form.
    """
    if not is_prime(q):
        raise GraphError(f"pg_incidence supports prime q only, got {q}")
    if not 2 <= q <= 31:
        raise GraphError(f"pg_incidence needs 2 <= q <= 31, got {q}")
    pts = _projective_points(q)
    n = len(pts)
    edges = []
    for i, p in enumerate(pts):
        for j, ln in enumerate(pts):
            if (p[0] * ln[0] + p[1] * ln[1] + p[2] * ln[2]) % q == 0:
                edges.append((i, n + j))
    return Graph(2 * n, edges)


def theta(n: int, k: int) -> Graph:
    """Hubs 0 and 1 joined by ``n`` internally disjoint paths with ``k`` interior vertices."""
    if n < 2 or k < 1:
        raise GraphError(f"theta needs n >= 2 and k >= 1, got ({n}, {k})")
    edges = []
    for j in range(n):
        inner = [2 + j * k + t for t in range(k)]
        chain = [0] + inner + [1]
        edges.extend(zip(chain, chain[1:]))
    return Graph(2 + n * k, edges)


@dataclass(frozen=True)
class Subdivision:
    """A k-fold subdivision together with its provenance.

    ``paths[e]`` is the vertex sequence ``(u, z_1, ..., z_k, v)`` replacing
    original edge ``e`` and ``edge_paths[e]`` the matching edge indices of
    ``graph``. Interior vertices follow the original ones in edge order.
    """

    graph: Graph
    original: Graph
    k: int
    paths: tuple[tuple[int, ...], ...] = field(repr=False)
    edge_paths: tuple[tuple[int, ...], ...] = field(repr=False)

    def origin_of_edge(self, edge: int) -> int:
        """Index of the original edge whose path contains subdivided ``edge``."""
        return edge // (self.k + 1)


def subdivide(g: Graph, k: int) -> Subdivision:
    if k < 1:
        raise GraphError(f"subdivision needs k >= 1, got {k}")
    edges = []
    paths = []
    edge_paths = []
    for e, (u, v) in enumerate(g.edges):
        chain = (u,) + tuple(g.n + e * k + t for t in range(k)) + (v,)
        start = len(edges)
        edges.extend(zip(chain, chain[1:]))
        paths.append(chain)
        edge_paths.append(tuple(range(start, len(edges))))
    sub = Graph(g.n + k * g.m, edges)
    return Subdivision(sub, g, k, tuple(paths), tuple(edge_paths))


FAMILY_NAMES = (
    "cycle",
    "path",
    "complete-bipartite",
    "k2n",
    "complete",
    "petersen",
    "hoffman-singleton",
    "pg",
    "theta",
)


@dataclass(frozen=True)
class FamilySpec:
    """Parameter record naming one family member, optionally subdivided."""

    family: str
    n: Optional[int] = None
    m: Optional[int] = None
    q: Optional[int] = None
    k: Optional[int] = None
    subdivide: Optional[int] = None

    def describe(self) -> str:
        params = ", ".join(
            f"{name}={getattr(self, name)}"
            for name in ("n", "m", "q", "k")
            if getattr(self, name) is not None
        )
        base = f"{self.family}({params})" if params else self.family
        if self.subdivide:
            return f"subdivide({base}, {self.subdivide})"
        return base


def _need(spec: FamilySpec, *names: str) -> None:
    missing = [name for name in names if getattr(spec, name) is None]
    if missing:
        raise GraphError(f"family {spec.family!r} needs parameter(s): {', '.join(missing)}")


def build_base(spec: FamilySpec) -> Graph:
    fam = spec.family
    if fam == "cycle":
        _need(spec, "n")
        return cycle(spec.n)
    if fam == "path":
        _need(spec, "n")
        return path(spec.n)
    if fam == "complete-bipartite":
        _need(spec, "m", "n")
        return complete_bipartite(spec.m, spec.n)
    if fam == "k2n":
        _need(spec, "n")
        return complete_bipartite(2, spec.n)
    if fam == "complete":
        _need(spec, "n")
        return complete(spec.n)
    if fam == "petersen":
        return petersen()
    if fam == "hoffman-singleton":
        return hoffman_singleton()
    if fam == "pg":
        _need(spec, "q")
        return pg_incidence(spec.q)
    if fam == "theta":
        _need(spec, "n", "k")
        return theta(spec.n, spec.k)
    raise GraphError(f"unknown family {fam!r}; choose from {', '.join(FAMILY_NAMES)}")


def build(spec: FamilySpec) -> Graph:
    g = build_base(spec)
    if spec.subdivide:
        return subdivide(g, spec.subdivide).graph
    return g


def build_with_provenance(spec: FamilySpec) -> tuple[Graph, Optional[Subdivision]]:
    g = build_base(spec)
    if spec.subdivide:
        sub = subdivide(g, spec.subdivide)
        return sub.graph, sub
    return g, None
