"""Seed-reproducible sampling of G(N,p) and uniform edge 2-colorings.

Every random bit is a pure function of (Seed, purpose tag, counter index),
via a splitmix64-style finalizer.  This makes any single edge indicator
addressable without generating the ones before it, so parallel workers can
draw disjoint slices and aggregation stays order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import Graph, from_adjacency_matrix

_GOLDEN = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1

# purpose tags keep the gnp stream and the coloring stream disjoint
_TAG_GNP = 0x47_4E_50
_TAG_COLOR = 0x43_4F_4C
_TAG_CHILD = 0x43_48_44


def splitmix64(x: int) -> int:
    """64-bit finalizer mix (splitmix64)."""
    x = (x + _GOLDEN) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D9DDF78A66AD45) & _MASK64
    x ^= x >> 31
    return x


def _splitmix64_np(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = x + np.uint64(_GOLDEN)
        x ^= x >> np.uint64(30)
        x = x * np.uint64(0xBF58476D1CE4E5B9)
        x ^= x >> np.uint64(27)
        x = x * np.uint64(0x94D9DDF78A66AD45)
        x ^= x >> np.uint64(31)
    return x


@dataclass(frozen=True)
class Seed:
    """Master seed plus a stream index; together they determine every sampled bit."""

    value: int
    stream_index: int = 0

    def key(self, tag: int) -> int:
        return splitmix64(splitmix64(self.value ^ tag) ^ splitmix64(self.stream_index + 1))

    def child(self, i: int) -> "Seed":
        """Derived seed for the i-th parallel sample; order-independent."""
        return Seed(self.value, splitmix64(self.key(_TAG_CHILD) ^ splitmix64(i + 1)))


def _uniforms(key: int, count: int) -> np.ndarray:
    """count uniforms in [0,1), addressed by counter index (vectorized)."""
    with np.errstate(over="ignore"):
        idx = np.arange(count, dtype=np.uint64) * np.uint64(_GOLDEN) + np.uint64(key)
    bits = _splitmix64_np(idx)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def uniform_for_index(key: int, i: int) -> float:
    """Single addressable uniform; agrees with _uniforms(key, ...)[i]."""
    bits = splitmix64((key + i * _GOLDEN) & _MASK64)
    return (bits >> 11) * (1.0 / (1 << 53))


def sample_gnp(n: int, p: float, seed: Seed) -> Graph:
    """Erdos-Renyi G(n,p); pair t = index of (u,v), u<v, in lexicographic order."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"p={p} outside [0,1]")
    if n < 0:
        raise InputError("n must be non-negative")
    m = n * (n - 1) // 2
    if m == 0:
        return Graph(n, [0] * n)
    u = _uniforms(seed.key(_TAG_GNP), m)
    edge = u < p
    mat = np.zeros((n, n), dtype=bool)
    iu = np.triu_indices(n, 1)
    mat[iu] = edge
    mat |= mat.T
    return from_adjacency_matrix(mat)


def sample_edge_colors(edge_count: int, seed: Seed) -> np.ndarray:
    """Boolean array: True = red, per canonical edge index; each Bernoulli(1/2)."""
    if edge_count == 0:
        return np.zeros(0, dtype=bool)
    return _uniforms(seed.key(_TAG_COLOR), edge_count) < 0.5


def sample_uniform_coloring(g: Graph, seed: Seed):
    """Uniformly random red/blue coloring of g's edges, deterministic in (g, seed)."""
    from .witness import TwoColoring

    red_bits = sample_edge_colors(g.edge_count, seed)
    red_mask = 0
    for i in np.flatnonzero(red_bits):
        red_mask |= 1 << int(i)
    return TwoColoring(g, red_mask)
