"""Exact path and cycle census.

All enumeration runs over adjacency bitsets. The innermost level of every
search is a popcount instead of an explicit loop, so only internal search
nodes are charged to the budget.

Work is partitioned by starting vertex; partial results merge by sum/min/max,
so counts are identical for any worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .budget import Budget, BudgetExceeded, Meter
from .graph_core import Graph, GraphError, girth


def path_order_for_girth(g: int) -> int:
    """Number of vertices in the paths used by the counting argument for girth ``g``."""
    if g < 3:
        raise ValueError(f"girth must be at least 3, got {g}")
    return (g + 3) // 2 if g % 2 else (g + 4) // 2


def _count_paths_from(g: Graph, starts: Sequence[int], k: int, meter: Meter) -> int:
    adj = g.neighbor_masks
    last = k - 1

    def walk(v: int, seen: int, depth: int) -> int:
        meter.tick()
        free = adj[v] & ~seen
        if depth == last - 1:
            return free.bit_count()
        total = 0
        while free:
            low = free & -free
            free ^= low
            total += walk(low.bit_length() - 1, seen | low, depth + 1)
        return total

    return sum(walk(s, 1 << s, 0) for s in starts)


def _count_cycles_from(g: Graph, starts: Sequence[int], length: int, meter: Meter) -> int:
    """Directed count of ``length``-cycles whose smallest vertex is in ``starts``."""
    adj = g.neighbor_masks

    def walk(s: int, v: int, seen: int, depth: int) -> int:
        meter.tick()
        free = adj[v] & ~seen
        if depth == length - 2:
            return (free & adj[s]).bit_count()
        total = 0
        while free:
            low = free & -free
            free ^= low
            total += walk(s, low.bit_length() - 1, seen | low, depth + 1)
        return total

    total = 0
    for s in starts:
        # vertices below s are excluded so each cycle is rooted at its minimum
        total += walk(s, s, (1 << (s + 1)) - 1, 0)
    return total


def _through_vertex(g: Graph, v: int, length: int, meter: Meter) -> int:
    adj = g.neighbor_masks

    def walk(u: int, seen: int, depth: int) -> int:
        meter.tick()
        free = adj[u] & ~seen
        if depth == length - 2:
            return (free & adj[v]).bit_count()
        total = 0
        while free:
            low = free & -free
            free ^= low
            total += walk(low.bit_length() - 1, seen | low, depth + 1)
        return total

    return walk(v, 1 << v, 0) // 2


def _closings(adj, a: int, b: int, steps: int, seen: int, meter: Meter) -> int:
    """Simple ``a``-to-``b`` paths of exactly ``steps`` edges avoiding ``seen``."""
    if steps == 1:
        return (adj[a] >> b) & 1
    if steps == 2:
        return (adj[a] & adj[b] & ~seen).bit_count()
    meter.tick()
    free = adj[a] & ~seen
    total = 0
    while free:
        low = free & -free
        free ^= low
        total += _closings(adj, low.bit_length() - 1, b, steps - 1, seen | low, meter)
    return total


def _extension_from(
    g: Graph, starts: Sequence[int], k: int, length: int, meter: Meter
) -> tuple[int, Optional[int], Optional[int], int, int]:
    """Per-path cycle-extension statistics for paths whose smaller end is in ``starts``.

    Returns ``(paths, ext_min, ext_max, covered, incidences)``.
    """
    adj = g.neighbor_masks
    steps = length - (k - 1)
    stats = [0, None, None, 0, 0]

    def leaf(s: int, v: int, seen: int) -> None:
        if steps == 2:
            ext = (adj[v] & adj[s] & ~seen).bit_count()
        else:
            ext = _closings(adj, v, s, steps, seen, meter)
        stats[0] += 1
        if stats[1] is None or ext < stats[1]:
            stats[1] = ext
        if stats[2] is None or ext > stats[2]:
            stats[2] = ext
        if ext:
            stats[3] += 1
        stats[4] += ext

    def walk(s: int, v: int, seen: int, depth: int) -> None:
        meter.tick()
        free = adj[v] & ~seen
        if depth == k - 2:
            # endpoint must exceed the start so each undirected path is seen once
            free &= ~((1 << (s + 1)) - 1)
            while free:
                low = free & -free
                free ^= low
                leaf(s, low.bit_length() - 1, seen | low)
            return
        while free:
            low = free & -free
            free ^= low
            walk(s, low.bit_length() - 1, seen | low, depth + 1)

    for s in starts:
        walk(s, s, 1 << s, 0)
    return stats[0], stats[1], stats[2], stats[3], stats[4]


# -- partitioned execution ---------------------------------------------------


def _task(payload):
    kind, g, starts, args, budget = payload
    meter = budget.meter()
    if kind == "paths":
        result = _count_paths_from(g, starts, args[0], meter)
    elif kind == "cycles":
        result = _count_cycles_from(g, starts, args[0], meter)
    else:
        result = _extension_from(g, starts, args[0], args[1], meter)
    return result, meter.nodes


def _partitioned(
    kind: str, g: Graph, args: tuple, budget: Budget, workers: int
) -> tuple[list, int]:
    if workers <= 1 or g.n < 2:
        parts = [list(range(g.n))]
        results = [_task((kind, g, parts[0], args, budget))]
    else:
        chunks = min(g.n, 4 * workers)
        parts = [list(range(i, g.n, chunks)) for i in range(chunks)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_task, [(kind, g, p, args, budget) for p in parts]))
    nodes = sum(r[1] for r in results)
    if nodes > budget.max_nodes:
        raise BudgetExceeded(f"node budget of {budget.max_nodes} exhausted", nodes)
    return [r[0] for r in results], nodes


def count_paths(g: Graph, k: int, budget: Budget = Budget(), workers: int = 1) -> int:
    """Number of subgraphs isomorphic to the path on ``k`` vertices."""
    if k < 2:
        raise ValueError(f"path order must be at least 2, got {k}")
    parts, _ = _partitioned("paths", g, (k,), budget, workers)
    return sum(parts) // 2


def count_cycles(g: Graph, length: int, budget: Budget = Budget(), workers: int = 1) -> int:
    if length < 3:
        raise ValueError(f"cycle length must be at least 3, got {length}")
    parts, _ = _partitioned("cycles", g, (length,), budget, workers)
    return sum(parts) // 2


def cycles_through_vertex(g: Graph, v: int, length: int, budget: Budget = Budget()) -> int:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if length < 3:
        raise ValueError(f"cycle length must be at least 3, got {length}")
    return _through_vertex(g, v, length, budget.meter())


def _merge_extension(parts) -> tuple[int, Optional[int], Optional[int], int, int]:
    paths = sum(p[0] for p in parts)
    mins = [p[1] for p in parts if p[1] is not None]
    maxs = [p[2] for p in parts if p[2] is not None]
    return (
        paths,
        min(mins) if mins else None,
        max(maxs) if maxs else None,
        sum(p[3] for p in parts),
        sum(p[4] for p in parts),
    )


def _extension_stats(g: Graph, k: int, length: int, budget: Budget, workers: int):
    if k < 2:
        raise ValueError(f"path order must be at least 2, got {k}")
    if length <= k - 1:
        raise ValueError(f"cycle length {length} must exceed path length {k - 1}")
    parts, nodes = _partitioned("extension", g, (k, length), budget, workers)
    stats = _merge_extension(parts)
    if stats[0] == 0:
        raise GraphError(f"graph has no path on {k} vertices")
    return stats, nodes


def unique_extension(
    g: Graph, k: int, length: int, budget: Budget = Budget(), workers: int = 1
) -> tuple[int, int]:
    """Min and max, over all ``k``-vertex paths, of the ``length``-cycles containing it."""
    stats, _ = _extension_stats(g, k, length, budget, workers)
    return stats[1], stats[2]


def coverage_ratio(
    g: Graph, k: int, length: int, budget: Budget = Budget(), workers: int = 1
) -> Fraction:
    """Fraction of ``k``-vertex paths lying on at least one ``length``-cycle."""
    stats, _ = _extension_stats(g, k, length, budget, workers)
    return Fraction(stats[3], stats[0])


@dataclass(frozen=True)
class CensusReport:
    k: int
    g: int
    path_count: int
    cycle_count: int
    extension_min: int
    extension_max: int
    covered_path_count: int
    coverage_ratio: Fraction
    incidences: int
    nodes: int = 0
    seconds: float = 0.0

    @property
    def unique(self) -> bool:
        return self.extension_min == self.extension_max == 1

    def as_dict(self) -> dict:
        out = asdict(self)
        out["coverage_ratio"] = _fraction_str(self.coverage_ratio)
        out["unique_extension"] = self.unique
        return out


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def census(
    g: Graph,
    k: Optional[int] = None,
    length: Optional[int] = None,
    budget: Budget = Budget(),
    workers: int = 1,
) -> CensusReport:
    """Full census; ``length`` defaults to the girth and ``k`` to the matching path order."""
    start = time.perf_counter()
    if length is None:
        length = girth(g)
        if length is None:
            raise GraphError("census needs a graph with a cycle or an explicit length")
    if k is None:
        k = path_order_for_girth(length)
    stats, nodes = _extension_stats(g, k, length, budget, workers)
    cyc_parts, cyc_nodes = _partitioned("cycles", g, (length,), budget, workers)
    paths, ext_min, ext_max, covered, incidences = stats
    report = CensusReport(
        k=k,
        g=length,
        path_count=paths,
        cycle_count=sum(cyc_parts) // 2,
        extension_min=ext_min,
        extension_max=ext_max,
        covered_path_count=covered,
        coverage_ratio=Fraction(covered, paths),
        incidences=incidences,
        nodes=nodes + cyc_nodes,
        seconds=time.perf_counter() - start,
    )
    return report
