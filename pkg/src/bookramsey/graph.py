"""Immutable simple graphs over bit-set adjacency.

Vertex sets are plain Python ints used as bit masks (bit v set <=> vertex v
present), which keeps intersections, unions and popcounts cheap for the
dense graphs this package works with.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InputError, LimitsError

MAXCUT_DEFAULT_CAP = 28


def mask_of(vertices: Iterable[int]) -> int:
    """Bit mask for a collection of vertex indices."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_members(mask: int) -> list[int]:
    """Sorted vertex indices contained in a bit mask."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph with per-vertex adjacency bit masks."""

    __slots__ = ("n", "adj", "_edge_count")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        if len(adj) != n:
            raise InputError("adjacency length must equal vertex count")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & (1 << v):
                raise InputError(f"loop at vertex {v}")
            if row & ~full:
                raise InputError(f"adjacency row {v} references out-of-range vertices")
        for v in range(n):
            for u in iter_bits(adj[v]):
                if not adj[u] & (1 << v):
                    raise InputError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.adj = tuple(adj)
        self._edge_count = sum(row.bit_count() for row in adj) // 2

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def vertices_mask(self) -> int:
        return (1 << self.n) - 1

    def neighborhood(self, v: int) -> int:
        return self.adj[v]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, lexicographic."""
        out = []
        for u in range(self.n):
            higher = self.adj[u] >> (u + 1)
            for off in iter_bits(higher):
                out.append((u, u + 1 + off))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build the simple graph on n vertices with the given edges.

    Duplicate pairs (in either order) collapse to a single edge.
    """
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise InputError(f"loop edge ({u},{v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def from_adjacency_matrix(mat: np.ndarray) -> Graph:
    """Graph from a symmetric boolean numpy matrix (diagonal ignored)."""
    n = mat.shape[0]
    m = np.asarray(mat, dtype=bool).copy()
    np.fill_diagonal(m, False)
    packed = np.packbits(m, axis=1, bitorder="little")
    adj = [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]
    return Graph(n, adj)


def common_neighborhood(g: Graph, s: int) -> int:
    """Common neighborhood of the vertices in mask s, excluding s itself."""
    if s == 0:
        raise InputError("common_neighborhood requires a non-empty vertex set")
    acc = g.vertices_mask()
    for v in iter_bits(s):
        acc &= g.adj[v]
    return acc & ~s


def enumerate_cliques(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """Yield every k-clique once, as sorted vertex tuples in lexicographic order.

    Ordered recursion over candidate bit masks restricted to higher-indexed
    vertices; no pivoting, since k is small and fixed.
    """
    if k < 1:
        raise InputError("clique size must be positive")

    def extend(prefix: tuple[int, ...], cand: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == k:
            yield prefix
            return
        for v in iter_bits(cand):
            yield from extend(prefix + (v,), cand & g.adj[v] & ~((1 << (v + 1)) - 1))

    yield from extend((), g.vertices_mask())


def triangle_count(g: Graph) -> int:
    """Number of triangles, via codegree sums over edges (each triangle counted triply)."""
    total = 0
    for u in range(g.n):
        au = g.adj[u]
        higher = au >> (u + 1)
        for off in iter_bits(higher):
            v = u + 1 + off
            total += (au & g.adj[v]).bit_count()
    # every triangle appears once per edge, i.e. three times
    assert total % 3 == 0
    return total // 3


def induced_subgraph(g: Graph, s: int) -> tuple[Graph, list[int]]:
    """Subgraph induced by mask s, relabeled 0..|s|-1; returns (graph, old labels)."""
    members = mask_members(s)
    index = {v: i for i, v in enumerate(members)}
    adj = [0] * len(members)
    for i, v in enumerate(members):
        for u in iter_bits(g.adj[v] & s):
            adj[i] |= 1 << index[u]
    return Graph(len(members), adj), members


_CHUNK = 1 << 18


def _maxcut_kernel(n: int, adj: tuple[int, ...]) -> int:
    """Exhaustive max-cut over all 2^(n-1) bipartitions, vectorized.

    cut(S) = sum over v in S of |N(v) \\ S|; vertex n-1 is pinned outside S.
    """
    if n <= 1:
        return 0
    adj_arr = np.array(adj, dtype=np.uint32 if n <= 32 else np.uint64)
    best = 0
    total = 1 << (n - 1)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        masks = np.arange(start, stop, dtype=adj_arr.dtype)
        inv = ~masks
        cut = np.zeros(stop - start, dtype=np.int64)
        for v in range(n - 1):
            inside = (masks >> v) & 1
            cut += inside.astype(np.int64) * np.bitwise_count(adj_arr[v] & inv).astype(np.int64)
        best = max(best, int(cut.max()))
    return best


@lru_cache(maxsize=256)
def _maxcut_cached(n: int, adj: tuple[int, ...]) -> int:
    return _maxcut_kernel(n, adj)


def maxcut_exact(g: Graph, cap: int = MAXCUT_DEFAULT_CAP) -> int:
    """Exact max-cut value of g; exhaustive over bipartitions, so g must be small."""
    if g.n > cap:
        raise LimitsError(f"maxcut_exact: {g.n} vertices exceeds cap {cap}")
    return _maxcut_cached(g.n, g.adj)


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertices: new vertex perm[v] takes the role of old vertex v."""
    adj = [0] * g.n
    for v in range(g.n):
        row = 0
        for u in iter_bits(g.adj[v]):
            row |= 1 << perm[u]
        adj[perm[v]] = row
    return Graph(g.n, adj)
