"""Exact-rational counting certificates for PRCF-badness.

Every argument has the same shape. Let S be the set of k-vertex paths and T
the non-rainbow ones under a hypothetical PRCF coloring. If every path in S
lies on exactly one shortest cycle, a window count gives a lower bound on
|T|/|S|. Counting rainbow extensions greedily gives a lower bound on the
rainbow paths, hence an upper bound on |T|/|S|. Upper < lower means no PRCF
coloring exists.

No floating point is used here.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .budget import Budget
from .census import census, count_cycles, count_paths, cycles_through_vertex, path_order_for_girth
from .families import hoffman_singleton
from .graph_core import Graph, GraphError, classify

FEIT_HIGMAN_DIAMETERS = frozenset({2, 3, 4, 6, 8})

BAD = "bad"
INCONCLUSIVE = "inconclusive"

ZERO = Fraction(0)
ONE = Fraction(1)


class CertificateError(ValueError):
    """Structural precondition of a certificate failed (distinct from budget failures)."""


class CrossCheckError(RuntimeError):
    """A recomputed quantity disagrees with its reference value."""


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class BoundCertificate:
    lower: Fraction
    upper: Fraction
    provenance: str
    parameters: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lower", min(max(Fraction(self.lower), ZERO), ONE))
        object.__setattr__(self, "upper", min(max(Fraction(self.upper), ZERO), ONE))

    @property
    def verdict(self) -> str:
        return BAD if self.upper < self.lower else INCONCLUSIVE

    @property
    def bad(self) -> bool:
        return self.verdict == BAD

    def as_dict(self) -> dict:
        return {
            "lower": fraction_str(self.lower),
            "upper": fraction_str(self.upper),
            "verdict": self.verdict,
            "provenance": self.provenance,
            "parameters": dict(self.parameters),
            "notes": list(self.notes),
        }


def _rainbow_ratio(step_degrees: Sequence[int]) -> Optional[Fraction]:
    """Guaranteed rainbow fraction of paths grown along vertices of the given degrees.

    ``step_degrees[j]`` is the degree of the vertex the ``(j+1)``-th edge
    leaves from. The first edge is free; the ``j``-th later edge has
    ``deg - 1`` continuations, at most ``j - 1`` of them repeating an earlier
    color. Returns ``None`` when some factor is non-positive (vacuous bound).
    """
    factors = [step_degrees[j] - j for j in range(1, len(step_degrees))]
    if any(f <= 0 for f in factors):
        return None
    totals = [step_degrees[j] - 1 for j in range(1, len(step_degrees))]
    return Fraction(prod(factors), prod(totals))


def _upper_from_ratio(ratio: Optional[Fraction]) -> Fraction:
    return ONE if ratio is None else ONE - ratio


def regular_upper(r: int, k: int) -> Fraction:
    """Upper bound on |T|/|S| for ``k``-vertex paths in an ``r``-regular graph of girth > k-1."""
    return _upper_from_ratio(_rainbow_ratio([r] * (k - 1)))


def moore5_bounds(r: int) -> BoundCertificate:
    """Bounds for a girth-5 Moore graph of degree ``r``: 1/5 versus 1/(r-1)."""
    if r < 3:
        raise ValueError(f"degree must be at least 3, got {r}")
    return BoundCertificate(
        Fraction(1, 5), Fraction(1, r - 1), "moore-girth5", (("r", r),)
    )


def polygon_bounds(d: int, r: int) -> BoundCertificate:
    """Bounds for an ``r``-regular generalized polygon of diameter ``d``.

    lower = 1/d, upper = 1 - prod_{i=2..d}(r-i) / (r-1)^(d-1), vacuous (1) if
    any factor is non-positive.
    """
    if r < 3:
        raise ValueError(f"degree must be at least 3, got {r}")
    notes = ()
    if d not in FEIT_HIGMAN_DIAMETERS:
        msg = f"no thick generalized polygon has diameter {d} (Feit-Higman)"
        warnings.warn(msg)
        notes = (msg,)
    factors = [r - i for i in range(2, d + 1)]
    if any(f <= 0 for f in factors):
        upper = ONE
    else:
        upper = ONE - Fraction(prod(factors), (r - 1) ** (d - 1))
    return BoundCertificate(Fraction(1, d), upper, f"regular-polygon(d={d})", (("d", d), ("r", r)), notes)


def octagon_upper(q: int) -> Fraction:
    factors = [q - 1, q * q - 2, q - 3, q * q - 4, q - 5, q * q - 6, q - 7]
    if any(f <= 0 for f in factors):
        return ONE
    return ONE - Fraction(prod(factors), q**10)


def octagon_bounds(q: int, lower: Fraction = Fraction(1, 8)) -> BoundCertificate:
    """Bounds for the Ree-Tits octagon with parameter ``q``.

    The window count gives 1/8; the alternative reading 1/6 is reported as a
    note and can be selected with ``lower``.
    """
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    upper = octagon_upper(q)
    alt = Fraction(1, 6)
    note = f"verdict at threshold 1/6: {BAD if upper < alt else INCONCLUSIVE}"
    return BoundCertificate(Fraction(lower), upper, "octagon", (("q", q),), (note,))


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        return True  # n itself is prime
    while n % p == 0:
        n //= p
    return n == 1


def find_threshold(d: int, require_prime_power: bool = False, limit: int = 10**6) -> int:
    """Smallest degree r with ``polygon_bounds(d, r)`` bad (and r-1 a prime power if asked)."""
    if d not in (3, 4, 6):
        raise ValueError(f"threshold sweep supports d in {{3, 4, 6}}, got {d}")
    lower = Fraction(1, d)
    for r in range(3, limit + 1):
        if require_prime_power and not is_prime_power(r - 1):
            continue
        if polygon_bounds(d, r).upper < lower:
            return r
    raise RuntimeError(f"no threshold found up to r = {limit}")


def odd_powers_of_two(limit_exp: int = 61):
    for e in range(1, limit_exp + 1, 2):
        yield 2**e


def octagon_threshold(lower: Fraction = Fraction(1, 8)) -> int:
    """Smallest odd power of 2 for which the octagon upper bound falls below ``lower``."""
    for q in odd_powers_of_two():
        if octagon_upper(q) < lower:
            return q
    raise RuntimeError("no octagon threshold found")


def order_formulas(r: int, d: int) -> dict:
    """Vertex counts of the extremal girth graphs with degree ``r`` and diameter ``d``.

    ``moore_style`` is 1 + sum r(r-1)^i, ``bipartite_style`` is 2 sum (r-1)^i.
    """
    if r < 3 or d < 2:
        raise ValueError(f"need r >= 3 and d >= 2, got r={r}, d={d}")
    return {
        "moore_style": 1 + sum(r * (r - 1) ** i for i in range(d)),
        "bipartite_style": 2 * sum((r - 1) ** i for i in range(d)),
    }


def window_bound(g: int, k: int) -> Fraction:
    """Minimum share of the ``g`` windows of ``k`` consecutive vertices on a g-cycle
    that contain a fixed pair of non-adjacent edges.

    Brute force over the cycle: edge ``i`` joins cycle vertices ``i`` and
    ``i+1``; the window starting at ``j`` holds edges ``j..j+k-2``.
    """
    if not 3 <= k - 1 < g:
        raise ValueError(f"need 3 <= k-1 < g, got g={g}, k={k}")
    windows = [{(j + t) % g for t in range(k - 1)} for j in range(g)]
    best = None
    for a in range(g):
        for b in range(a + 1, g):
            if (b - a) % g in (1, g - 1):
                continue
            hits = sum(1 for w in windows if a in w and b in w)
            if best is None or hits < best:
                best = hits
    if best is None:
        raise ValueError(f"a {g}-cycle has no non-adjacent edge pair")
    return Fraction(best, g)


def semiregular_upper(n_a: int, deg_a: int, n_b: int, deg_b: int, k: int) -> Fraction:
    """Upper bound on |T|/|S| for a bipartite graph whose sides are regular of
    degrees ``deg_a`` (``n_a`` vertices) and ``deg_b`` (``n_b`` vertices)."""
    edges = k - 1

    def seq(start: int, other: int) -> list[int]:
        return [start if j % 2 == 0 else other for j in range(edges)]

    def total(start: int, other: int) -> int:
        s = seq(start, other)
        return s[0] * prod(x - 1 for x in s[1:])

    def rainbow(start: int, other: int) -> Optional[int]:
        s = seq(start, other)
        factors = [s[j] - j for j in range(1, edges)]
        if any(f <= 0 for f in factors):
            return None
        return s[0] * prod(factors)

    ra = rainbow(deg_a, deg_b)
    rb = rainbow(deg_b, deg_a)
    if edges % 2:
        # ends on opposite sides: every path is counted once from either side
        best = max(n_a * ra if ra is not None else 0, n_b * rb if rb is not None else 0)
        if best == 0:
            return ONE
        return ONE - Fraction(best, n_a * total(deg_a, deg_b))
    if ra is None or rb is None:
        return ONE
    whole = n_a * total(deg_a, deg_b) + n_b * total(deg_b, deg_a)
    return ONE - Fraction(n_a * ra + n_b * rb, whole)


def concrete_certificate(
    g: Graph, budget: Budget = Budget(), workers: int = 1
) -> tuple[BoundCertificate, object]:
    """Machine-checked counting certificate for a concrete graph.

    Returns ``(certificate, census_report)``. Raises :class:`CertificateError`
    when the graph is not a Moore graph or generalized polygon of girth >= 5,
    or when the unique-extension property fails.
    """
    try:
        info = classify(g)
    except GraphError as exc:
        raise CertificateError(str(exc)) from None
    if not (info.is_moore or info.is_polygon):
        raise CertificateError(f"graph is neither Moore nor a generalized polygon ({info.describe()})")
    gi = info.girth
    if gi < 5:
        raise CertificateError(f"girth {gi} is too small for the window argument")
    k = path_order_for_girth(gi)
    report = census(g, k, gi, budget=budget, workers=workers)
    if not report.unique:
        raise CertificateError(
            f"unique extension fails: each P_{k} lies on {report.extension_min}.."
            f"{report.extension_max} cycles of length {gi}"
        )
    lower = window_bound(gi, k)
    params = (("girth", gi), ("k", k), ("diameter", info.diameter))
    if info.regular_degree is not None:
        r = info.regular_degree
        upper = regular_upper(r, k)
        if info.is_moore and gi == 5:
            provenance = "moore-girth5"
        elif info.is_moore:
            provenance = f"moore(d={info.diameter})"
        else:
            provenance = f"regular-polygon(d={info.diameter})"
        params += (("r", r),)
    else:
        if info.bipartition is None or len(info.degree_set) != 2:
            raise CertificateError("irregular graphs need a bipartite two-degree pattern")
        a, b = info.bipartition
        da = {g.degree(v) for v in a}
        db = {g.degree(v) for v in b}
        if len(da) != 1 or len(db) != 1:
            raise CertificateError("each side of the bipartition must be regular")
        deg_a, deg_b = da.pop(), db.pop()
        upper = semiregular_upper(len(a), deg_a, len(b), deg_b, k)
        provenance = f"semiregular-polygon(d={info.diameter})"
        params += (("degrees", (deg_a, deg_b)),)
    return BoundCertificate(lower, upper, provenance, params), report


HOSI_REFERENCE = {"paths": 6300, "cycles": 1260, "per_vertex": 126, "lower": 1134, "upper": 1050}


def hosi_noncriticality_numbers(g: Optional[Graph] = None, budget: Budget = Budget()) -> dict:
    """Recount the vertex-deleted Hoffman-Singleton contradiction and check the reference values.

    After deleting one vertex, every surviving 5-cycle still forces a
    non-rainbow P4 (lower bound cycles - per_vertex), while the middle-edge
    count caps the non-rainbow P4s at paths/6.
    """
    g = hoffman_singleton() if g is None else g
    paths = count_paths(g, 4, budget)
    cycles = count_cycles(g, 5, budget)
    through = {cycles_through_vertex(g, v, 5, budget) for v in range(g.n)}
    per_vertex = Fraction(5 * cycles, g.n)
    if through != {per_vertex}:
        raise CrossCheckError(f"per-vertex 5-cycle counts {sorted(through)} != {per_vertex}")
    upper = Fraction(paths, 6)
    got = {
        "paths": paths,
        "cycles": cycles,
        "per_vertex": int(per_vertex),
        "lower": cycles - int(per_vertex),
        "upper": int(upper),
    }
    if upper.denominator != 1:
        raise CrossCheckError(f"paths/6 = {upper} is not an integer")
    diffs = {key: (got[key], ref) for key, ref in HOSI_REFERENCE.items() if got[key] != ref}
    if diffs:
        raise CrossCheckError(f"recomputed values disagree with reference: {diffs}")
    got["contradiction"] = got["lower"] > got["upper"]
    return got
