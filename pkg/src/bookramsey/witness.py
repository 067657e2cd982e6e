"""Analysis of a fixed red/blue edge coloring: monochromatic book and
biclique detection, and the exact triangle accounting (T, M_r, M_b, M_rb).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Optional

from .errors import InputError, InternalError
from .graph import (
    Graph,
    enumerate_cliques,
    iter_bits,
    triangle_count,
)

Color = Literal["red", "blue"]


class TwoColoring:
    """Red/blue assignment to the edges of a host graph.

    red_edges is a bit mask over canonical edge indices (edges sorted by
    (u,v), u<v, lexicographic); blue is the complement within E.
    """

    __slots__ = ("host", "red_edges", "_edges", "_edge_index")

    def __init__(self, host: Graph, red_edges: int):
        self.host = host
        self._edges = host.edges()
        m = len(self._edges)
        if red_edges < 0 or red_edges >> m:
            raise InputError("red_edges mask references non-edges")
        self.red_edges = red_edges
        self._edge_index = {e: i for i, e in enumerate(self._edges)}

    @property
    def edges(self) -> list[tuple[int, int]]:
        return self._edges

    def edge_index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self._edge_index[(u, v)]

    def is_red(self, u: int, v: int) -> bool:
        return bool(self.red_edges & (1 << self.edge_index(u, v)))

    def color_of(self, u: int, v: int) -> Color:
        return "red" if self.is_red(u, v) else "blue"

    def swapped(self) -> "TwoColoring":
        m = len(self._edges)
        return TwoColoring(self.host, ((1 << m) - 1) ^ self.red_edges)

    def __repr__(self) -> str:
        return f"TwoColoring(host={self.host!r}, red={self.red_edges.bit_count()})"


@dataclass(frozen=True)
class ColoringCounts:
    """Exact triangle decomposition of a colored graph."""

    T: int
    M_r: int
    M_b: int
    M_rb: int

    @property
    def M(self) -> int:
        return self.M_r + self.M_b


@dataclass(frozen=True)
class BookWitness:
    """A monochromatic book (or biclique): spine vertices plus page mask.

    For books the spine is a same-color clique; for bicliques it is just a
    vertex set.  Every page joins every spine vertex in the given color.
    """

    color: Color
    spine: tuple[int, ...]
    pages: int  # bit mask

    @property
    def page_count(self) -> int:
        return self.pages.bit_count()


def color_subgraph(c: TwoColoring, color: Color) -> Graph:
    """Graph on the same vertex set containing exactly the edges of one color."""
    want_red = color == "red"
    adj = [0] * c.host.n
    for i, (u, v) in enumerate(c.edges):
        if bool(c.red_edges & (1 << i)) == want_red:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(c.host.n, adj)


def goodman_counts(c: TwoColoring) -> ColoringCounts:
    """Exact counts T, M_r, M_b, M_rb.

    M_rb is computed as (1/2) sum over vertices v of e(N_R(v), N_B(v)):
    each non-monochromatic triangle has exactly two vertices whose incident
    triangle edges differ in color.  M_r and M_b come from same-color
    codegree sums over the edges of each color class, divided by 3.
    """
    g = c.host
    red = color_subgraph(c, "red")
    blue = color_subgraph(c, "blue")

    def mono(sub: Graph) -> int:
        total = 0
        for u in range(sub.n):
            au = sub.adj[u]
            for off in iter_bits(au >> (u + 1)):
                v = u + 1 + off
                total += (au & sub.adj[v]).bit_count()
        if total % 3:
            raise InternalError("monochromatic codegree sum not divisible by 3")
        return total // 3

    m_r = mono(red)
    m_b = mono(blue)

    cross = 0
    for v in range(g.n):
        nr = red.adj[v]
        nb = blue.adj[v]
        for u in iter_bits(nr):
            cross += (g.adj[u] & nb).bit_count()
    if cross % 2:
        raise InternalError("bichromatic incidence sum not even")
    m_rb = cross // 2

    t = triangle_count(g)
    if m_r + m_b + m_rb != t:
        raise InternalError("Goodman identity M_r + M_b + M_rb = T violated")
    return ColoringCounts(T=t, M_r=m_r, M_b=m_b, M_rb=m_rb)


def _same_color_common(sub: Graph, spine: tuple[int, ...]) -> int:
    acc = sub.vertices_mask()
    for v in spine:
        acc &= sub.adj[v]
    for v in spine:
        acc &= ~(1 << v)
    return acc


def max_book_size(c: TwoColoring, color: Color, k: int) -> int:
    """Max pages over same-color k-cliques: |common same-color neighborhood|."""
    if k < 1:
        raise InputError("k must be positive")
    sub = color_subgraph(c, color)
    best = 0
    for spine in enumerate_cliques(sub, k):
        best = max(best, _same_color_common(sub, spine).bit_count())
    return best


def find_mono_book(c: TwoColoring, k: int, n: int) -> Optional[BookWitness]:
    """Exhaustive search for a monochromatic book B_n^(k); verified witness or None."""
    if k < 1 or n < 1:
        raise InputError("k and n must be positive")
    for color in ("red", "blue"):
        sub = color_subgraph(c, color)
        for spine in enumerate_cliques(sub, k):
            pages = _same_color_common(sub, spine)
            if pages.bit_count() >= n:
                return BookWitness(color=color, spine=spine, pages=pages)
    return None


def find_mono_biclique(c: TwoColoring, k: int, n: int) -> Optional[BookWitness]:
    """Exhaustive search for a monochromatic K_{k,n}; spine is the k-side (not
    required to be a clique)."""
    if k < 1 or n < 1:
        raise InputError("k and n must be positive")
    g = c.host
    for color in ("red", "blue"):
        sub = color_subgraph(c, color)
        # degeneracy-style pruning: a k-side vertex needs color degree >= n
        viable = [v for v in range(g.n) if sub.degree(v) >= n]
        for side in combinations(viable, k):
            acc = sub.vertices_mask()
            for v in side:
                acc &= sub.adj[v]
                if acc.bit_count() < n:
                    break
            else:
                for v in side:
                    acc &= ~(1 << v)
                if acc.bit_count() >= n:
                    return BookWitness(color=color, spine=tuple(side), pages=acc)
    return None


def verify_book_witness(c: TwoColoring, w: BookWitness, k: int, n: int,
                        spine_is_clique: bool = True) -> bool:
    """Machine-check a witness against the coloring it claims to live in."""
    sub = color_subgraph(c, w.color)
    if len(w.spine) != k or w.page_count < n:
        return False
    if spine_is_clique:
        for u, v in combinations(w.spine, 2):
            if not sub.has_edge(u, v):
                return False
    spine_mask = 0
    for v in w.spine:
        spine_mask |= 1 << v
    if w.pages & spine_mask:
        return False
    for v in w.spine:
        if w.pages & ~sub.adj[v]:
            return False
    return True
