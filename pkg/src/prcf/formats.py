"""Text encodings: edge lists, graph6, DOT, and line-oriented colorings."""

from __future__ import annotations

from typing import Optional, Sequence

from .graph_core import Graph, GraphError

GRAPH6_HEADER = ">>graph6<<"


def to_edge_list(g: Graph) -> str:
    """One ``u v`` line per edge in index order.

    A leading ``# n N`` line is written only when the vertex count is not
    implied by the largest endpoint (isolated trailing vertices, empty graph).
    """
    lines = []
    implied = 1 + max((v for _, v in g.edges), default=-1)
    if implied != g.n:
        lines.append(f"# n {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    n: Optional[int] = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "n":
                n = int(parts[1])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex index")
        edges.append((u, v))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(n, edges)


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    """graph6 string (no header, no newline)."""
    bits = []
    masks = g.neighbor_masks
    for j in range(1, g.n):
        mj = masks[j]
        for i in range(j):
            bits.append((mj >> i) & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k : k + 6]:
            x = (x << 1) | b
        body.append(chr(x + 63))
    return _encode_n(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(x < 0 or x > 63 for x in data):
        raise GraphError("graph6 characters must lie in the range '?'..'~'")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) > 1 and data[1] != 63:
        if len(data) < 4:
            raise GraphError("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    else:
        if len(data) < 8:
            raise GraphError("truncated graph6 size field")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        pos = 8
    need = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (need + 5) // 6:
        raise GraphError(
            f"graph6 body has {len(body)} characters, expected {(need + 5) // 6}"
        )
    bits = []
    for x in body:
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[need:]):
        raise GraphError("nonzero graph6 padding bits")
    edges.sort()
    return Graph(n, edges)


def parse_graph(text: str) -> Graph:
    """Parse edge-list or graph6 text, detected by content."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or (line.startswith("#")):
            continue
        if line.startswith(GRAPH6_HEADER) or len(line.split()) == 1:
            return parse_graph6(line)
        return parse_edge_list(text)
    return parse_edge_list(text)


def to_dot(g: Graph, colors: Optional[Sequence[int]] = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for i, (u, v) in enumerate(g.edges):
        if colors is None:
            lines.append(f"  {u} -- {v};")
        else:
            lines.append(f'  {u} -- {v} [label="{colors[i]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_coloring_text(colors: Sequence[int]) -> str:
    return "".join(f"{i} {c}\n" for i, c in enumerate(colors))


def parse_coloring_text(text: str, m: Optional[int] = None) -> list[int]:
    """Parse ``edgeIndex color`` lines; every edge index must appear exactly once."""
    found: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'edgeIndex color'")
        i, c = int(parts[0]), int(parts[1])
        if i in found:
            raise GraphError(f"line {lineno}: edge {i} colored twice")
        if c < 0:
            raise GraphError(f"line {lineno}: negative color")
        found[i] = c
    size = len(found) if m is None else m
    if sorted(found) != list(range(size)):
        raise GraphError(f"coloring must cover edge indices 0..{size - 1} exactly")
    return [found[i] for i in range(size)]
