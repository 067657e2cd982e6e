"""Checkers for the regularity toolkit on user-supplied partitions:
p-density, (epsilon,p)-regularity refutation, reduced-graph construction,
counting-lemma and extension bounds, and the two-case analytic inequality.

Certifying regularity exhaustively is exponential in the part size, so the
exhaustive mode is capped; the sampled mode only ever refutes (a sampled
"regular" claim would be unsound).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal, Optional, Sequence

from .errors import InputError, LimitsError
from .graph import Graph, iter_bits, mask_members, mask_of
from .sampler import Seed, splitmix64
from .witness import TwoColoring, color_subgraph

EXHAUSTIVE_SIDE_CAP = 14


def _edges_between(g: Graph, U: int, W: int) -> int:
    """e(U,W) with edges inside the overlap counted twice."""
    return sum((g.adj[v] & W).bit_count() for v in iter_bits(U))


def p_density(g: Graph, U: int, W: int, p: float) -> float:
    """e(U,W) / (p |U| |W|); overlap edges counted twice."""
    if U == 0 or W == 0:
        raise InputError("p_density requires non-empty vertex sets")
    if not 0.0 < p <= 1.0:
        raise InputError("p must lie in (0,1]")
    # group the size product so the result is symmetric in (U, W)
    return _edges_between(g, U, W) / (p * (U.bit_count() * W.bit_count()))


def plain_density(g: Graph, U: int, W: int) -> float:
    return p_density(g, U, W, 1.0)


@dataclass(frozen=True)
class RegPairReport:
    density: float
    verdict: Literal["regular", "refuted", "undetermined"]
    strategy: Literal["exhaustive", "sampled"]
    trials: int
    witness: Optional[tuple[int, int, float]] = None  # (U' mask, W' mask, density)


def _subset_density_range(g: Graph, U_members: list[int], W_mask: int,
                          min_size: int, p: float):
    """Exact max/min of d(U', W') over U' subsets of U with |U'| >= min_size,
    for a fixed W'.  The extreme average of per-vertex degrees into W' is
    attained by the top (resp. bottom) min_size degrees."""
    w = W_mask.bit_count()
    degs = sorted(((g.adj[v] & W_mask).bit_count(), v) for v in U_members)
    bot = degs[:min_size]
    top = degs[-min_size:]
    d_min = sum(d for d, _ in bot) / (p * min_size * w)
    d_max = sum(d for d, _ in top) / (p * min_size * w)
    return (d_min, mask_of(v for _, v in bot)), (d_max, mask_of(v for _, v in top))


def test_regularity(g: Graph, U: int, W: int, epsilon: float, p: float,
                    strategy: Literal["exhaustive", "sampled"] = "exhaustive",
                    trials: int = 200, seed: Seed = Seed(0)) -> RegPairReport:
    """Check the (epsilon,p)-regularity of the pair (U, W).

    Exhaustive mode enumerates every W' with |W'| >= ceil(eps |W|) and, for
    each, the exact density extremes over U' (sorted-degree argument), so it
    decides regular vs refuted.  Sampled mode draws random sub-pairs and can
    only refute or stay undetermined.
    """
    if U == 0 or W == 0:
        raise InputError("test_regularity requires non-empty vertex sets")
    if not 0.0 < epsilon:
        raise InputError("epsilon must be positive")
    d_full = p_density(g, U, W, p)
    u_members = mask_members(U)
    w_members = mask_members(W)
    nu, nw = len(u_members), len(w_members)
    min_u = max(1, math.ceil(epsilon * nu))
    min_w = max(1, math.ceil(epsilon * nw))
    if min_u > nu or min_w > nw:
        # no qualifying sub-pairs at all: vacuously regular
        return RegPairReport(density=d_full, verdict="regular",
                             strategy=strategy, trials=0)

    if strategy == "exhaustive":
        if nu > EXHAUSTIVE_SIDE_CAP or nw > EXHAUSTIVE_SIDE_CAP:
            raise LimitsError(
                f"exhaustive regularity limited to {EXHAUSTIVE_SIDE_CAP} vertices per side")
        # enumerate subsets of the smaller side; resolve the other side exactly
        if nw <= nu:
            enum_members, enum_min = w_members, min_w
            other_members, other_min = u_members, min_u
            swap = False
        else:
            enum_members, enum_min = u_members, min_u
            other_members, other_min = w_members, min_w
            swap = True
        trials_done = 0
        for size in range(enum_min, len(enum_members) + 1):
            for sub in combinations(enum_members, size):
                trials_done += 1
                sub_mask = mask_of(sub)
                (d_lo, lo_mask), (d_hi, hi_mask) = _subset_density_range(
                    g, other_members, sub_mask, other_min, p)
                for d_sub, o_mask in ((d_lo, lo_mask), (d_hi, hi_mask)):
                    if abs(d_full - d_sub) > epsilon:
                        up, wp = (sub_mask, o_mask) if swap else (o_mask, sub_mask)
                        return RegPairReport(density=d_full, verdict="refuted",
                                             strategy="exhaustive", trials=trials_done,
                                             witness=(up, wp, d_sub))
        return RegPairReport(density=d_full, verdict="regular",
                             strategy="exhaustive", trials=trials_done)

    if strategy != "sampled":
        raise InputError(f"unknown strategy {strategy!r}")
    rng = random.Random(splitmix64(seed.key(0x52_45_47)))
    for t in range(1, trials + 1):
        su = rng.randint(min_u, nu)
        sw = rng.randint(min_w, nw)
        up = mask_of(rng.sample(u_members, su))
        wp = mask_of(rng.sample(w_members, sw))
        d_sub = p_density(g, up, wp, p)
        if abs(d_full - d_sub) > epsilon:
            return RegPairReport(density=d_full, verdict="refuted",
                                 strategy="sampled", trials=t,
                                 witness=(up, wp, d_sub))
    return RegPairReport(density=d_full, verdict="undetermined",
                         strategy="sampled", trials=trials)


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]  # disjoint vertex masks covering V

    def __post_init__(self):
        acc = 0
        for part in self.parts:
            if part & acc:
                raise InputError("partition parts must be disjoint")
            acc |= part

    @property
    def equitable(self) -> bool:
        sizes = [p.bit_count() for p in self.parts]
        return not sizes or max(sizes) - min(sizes) <= 1

    def validate_cover(self, g: Graph) -> None:
        acc = 0
        for part in self.parts:
            acc |= part
        if acc != g.vertices_mask():
            raise InputError("partition does not cover the vertex set")


def equitable_partition(g: Graph, m: int) -> Partition:
    """Split 0..n-1 into m consecutive, nearly equal parts."""
    if m < 1 or m > max(1, g.n):
        raise InputError("part count out of range")
    base, extra = divmod(g.n, m)
    parts = []
    start = 0
    for i in range(m):
        size = base + (1 if i < extra else 0)
        parts.append(mask_of(range(start, start + size)))
        start += size
    return Partition(tuple(parts))


@dataclass(frozen=True)
class ReducedGraph:
    """Reduced graph over partition parts: an edge where the pair was not
    refuted as regular and has blue p-density >= delta; the mask marks parts
    of internal red p-density >= 1/2 (these induce the primed subgraph)."""

    m: int
    edges: frozenset[tuple[int, int]]
    red_vertex_mask: int

    def induced_on_mask(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, j in self.edges
                         if self.red_vertex_mask >> i & 1 and self.red_vertex_mask >> j & 1)


def build_reduced_graph(g: Graph, coloring: TwoColoring, partition: Partition,
                        epsilon: float, p: float, delta: float,
                        trials: int = 100, seed: Seed = Seed(0)) -> ReducedGraph:
    partition.validate_cover(g)
    blue = color_subgraph(coloring, "blue")
    red = color_subgraph(coloring, "red")
    m = len(partition.parts)
    edges = set()
    for i, j in combinations(range(m), 2):
        Vi, Vj = partition.parts[i], partition.parts[j]
        rep = test_regularity(g, Vi, Vj, epsilon, p, strategy="sampled",
                              trials=trials, seed=seed.child(i * m + j))
        if rep.verdict == "refuted":
            continue
        if p_density(blue, Vi, Vj, p) >= delta:
            edges.add((i, j))
    mask = 0
    for i, Vi in enumerate(partition.parts):
        # internal density convention: double-counted edges over p |Vi|^2
        if Vi.bit_count() >= 2 and p_density(red, Vi, Vi, p) >= 0.5:
            mask |= 1 << i
    return ReducedGraph(m=m, edges=frozenset(edges), red_vertex_mask=mask)


def count_transversal_cliques(g: Graph, parts: Sequence[int]) -> int:
    """Labeled K_k copies with the i-th vertex in parts[i] (vertices distinct;
    parts may repeat)."""
    k = len(parts)

    def rec(i: int, chosen: tuple[int, ...], common: int) -> int:
        if i == k:
            return 1
        total = 0
        for v in iter_bits(parts[i] & common):
            if v in chosen:
                continue
            total += rec(i + 1, chosen + (v,), common & g.adj[v])
        return total

    return rec(0, (), g.vertices_mask())


def counting_lemma_check(g: Graph, parts: Sequence[int], epsilon: float
                         ) -> tuple[int, float]:
    """(actual labeled K_k count, density counting-lemma lower bound).

    The bound is (prod_{i<j} d(W_i,W_j) - eps*C(k,2)) * prod |W_i|, in the
    plain-density (p=1) form."""
    k = len(parts)
    if k < 2:
        raise InputError("counting_lemma_check needs at least two parts")
    if any(p == 0 for p in parts):
        raise InputError("parts must be non-empty")
    prod_d = 1.0
    for i, j in combinations(range(k), 2):
        prod_d *= plain_density(g, parts[i], parts[j])
    sizes = 1
    for part in parts:
        sizes *= part.bit_count()
    bound = (prod_d - epsilon * math.comb(k, 2)) * sizes
    actual = count_transversal_cliques(g, parts)
    return actual, bound


@dataclass(frozen=True)
class ExtensionProfile:
    """Normalized blue degrees x_i(v) = deg_B(v, W_i) / (p0 |W_i|)."""

    vertex: int
    x: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.x)


def extension_profile(coloring: TwoColoring, v: int, parts: Sequence[int],
                      p0: float) -> ExtensionProfile:
    if not 0.0 < p0 <= 1.0:
        raise InputError("p0 must lie in (0,1]")
    blue = color_subgraph(coloring, "blue")
    xs = tuple((blue.adj[v] & W).bit_count() / (p0 * W.bit_count()) for W in parts)
    return ExtensionProfile(vertex=v, x=xs)


def extension_bound_check(g: Graph, parts: Sequence[int], u: int, delta: float,
                          spine: Optional[Sequence[int]] = None,
                          max_spines: Optional[int] = None,
                          seed: Seed = Seed(0)) -> tuple[float, float]:
    """Empirical extension frequency of u over transversal cliques vs the
    bound prod_i d(u, U_i) - 4*delta.

    With an explicit spine the frequency is the 0/1 indicator for that spine.
    Otherwise all transversal cliques are enumerated (or max_spines of them,
    sampled), and the frequency is the fraction that u extends."""
    k = len(parts)
    bound = 1.0
    for W in parts:
        bound *= (g.adj[u] & W).bit_count() / W.bit_count()
    bound -= 4.0 * delta

    def extends(q: Sequence[int]) -> bool:
        return all(g.adj[u] >> v & 1 for v in q)

    if spine is not None:
        if len(spine) != k:
            raise InputError("spine must have one vertex in each part")
        for v, W in zip(spine, parts):
            if not W >> v & 1:
                raise InputError("spine vertex outside its part")
        return (1.0 if extends(spine) else 0.0), bound

    spines: list[tuple[int, ...]] = []

    def rec(i: int, chosen: tuple[int, ...], common: int) -> None:
        if i == k:
            spines.append(chosen)
            return
        for v in iter_bits(parts[i] & common):
            if v not in chosen:
                rec(i + 1, chosen + (v,), common & g.adj[v])

    rec(0, (), g.vertices_mask())
    if not spines:
        return 0.0, bound
    if max_spines is not None and len(spines) > max_spines:
        rng = random.Random(splitmix64(seed.key(0x45_58_54)))
        spines = rng.sample(spines, max_spines)
    freq = sum(1 for q in spines if extends(q)) / len(spines)
    return freq, bound


def conlon_inequality_lhs(x: Sequence[float]) -> float:
    """prod x_i + (1/k) sum (1-x_i)^k; at least 2^(1-k) on [0,1]^k."""
    k = len(x)
    if k < 1:
        raise InputError("need at least one coordinate")
    for xi in x:
        if not 0.0 <= xi <= 1.0:
            raise InputError(f"coordinate {xi} outside [0,1]")
    prod = 1.0
    for xi in x:
        prod *= xi
    return prod + sum((1.0 - xi) ** k for xi in x) / k


def case_split(profile: ExtensionProfile) -> Literal["case1", "case2"]:
    """case1 when prod x_i >= 2^-k (abundant blue extensions), else case2
    (some part supplies abundant red extensions)."""
    k = profile.k
    prod = 1.0
    for xi in profile.x:
        prod *= xi
    return "case1" if prod >= 2.0 ** (-k) else "case2"
