"""Shared oracles and hypothesis strategies."""

from itertools import combinations

import hypothesis.strategies as st

from bookramsey.graph import Graph, from_edge_list


def graph_from_edge_mask(n: int, mask: int) -> Graph:
    """Decode a graph on n vertices from a bit mask over canonical pair order."""
    pairs = list(combinations(range(n), 2))
    edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
    return from_edge_list(n, edges)


@st.composite
def small_graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    m = n * (n - 1) // 2
    mask = draw(st.integers(min_value=0, max_value=(1 << m) - 1))
    return graph_from_edge_mask(n, mask)


def brute_maxcut(g: Graph) -> int:
    """Reference max-cut by direct evaluation of all 2^n bipartitions."""
    best = 0
    for s in range(1 << g.n):
        cut = 0
        for u, v in g.edges():
            if (s >> u & 1) != (s >> v & 1):
                cut += 1
        best = max(best, cut)
    return best


def brute_triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for a, b, c in combinations(range(g.n), 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            out.append((a, b, c))
    return out
