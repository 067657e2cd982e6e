"""Executable analytic calculators: the sharp-threshold formula, the
Chernoff lower-threshold report, the k=2 counting certificate for book
arrowing, the small-parameter recipe for the regularity route, and the
quasirandomness audit.

Probability bounds are evaluated in log space (log-gamma binomials) so N up
to 10^6 poses no overflow risk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError, LimitsError
from .graph import Graph, induced_subgraph, maxcut_exact, triangle_count
from .sampler import Seed, splitmix64
import random


def sharp_threshold(k: int, c: float) -> float:
    """The sharp arrowing threshold 1/c^{1/k}."""
    if k < 1:
        raise InputError("k must be a positive integer")
    if c <= 1:
        raise InputError("c must exceed 1")
    return c ** (-1.0 / k)


@dataclass(frozen=True)
class ThresholdParams:
    """Derived quantities of the N = c*2^k*n parameterization."""

    k: int
    c: float
    n: int
    gamma: float

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise InputError("k and n must be positive")
        if self.c <= 1:
            raise InputError("c must exceed 1")
        if self.gamma < 0:
            raise InputError("gamma must be non-negative")

    @property
    def N(self) -> int:
        return math.floor(self.c * 2 ** self.k * self.n)

    @property
    def p_sharp(self) -> float:
        return sharp_threshold(self.k, self.c)

    @property
    def p_lower(self) -> float:
        return self.p_sharp * (1.0 - self.gamma) ** (1.0 / self.k)

    @property
    def p0_lower(self) -> float:
        return self.p_lower / 2.0

    @property
    def p0_upper(self) -> float:
        return self.p_sharp * (1.0 + self.gamma / 2.0)


@dataclass(frozen=True)
class ChernoffReport:
    """Union-bound report for the absence of K_{k,n} below the threshold."""

    delta: float
    log_tail: float
    log_union_bound: float
    log_doubled_union_bound: float
    gamma_too_small: bool

    @property
    def tail(self) -> float:
        return math.exp(self.log_tail)

    @property
    def union_bound(self) -> float:
        return math.exp(self.log_union_bound)

    @property
    def doubled_union_bound(self) -> float:
        return math.exp(self.log_doubled_union_bound)


def _log_binom(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def lower_threshold_report(params: ThresholdParams) -> ChernoffReport:
    """Chernoff tail for the count of common neighbors of a k-set in
    G(N, p_lower/2), with the union bound over all C(N,k) sets and the
    factor-2 doubling that covers both colors of a random coloring."""
    k, c, gamma = params.k, params.c, params.gamma
    N = params.N
    if N <= k:
        raise InputError("N must exceed k")
    p0 = params.p0_lower
    delta = (gamma + k / (N - k)) / (c * 2 ** k)
    q = p0 ** k
    log_tail = -(N - k) * delta * delta / (3.0 * q * (1.0 - q))
    log_union = _log_binom(N, k) + log_tail
    log_doubled = math.log(2.0) + log_union
    return ChernoffReport(
        delta=delta,
        log_tail=log_tail,
        log_union_bound=log_union,
        log_doubled_union_bound=log_doubled,
        gamma_too_small=log_doubled >= 0.0,
    )


@dataclass(frozen=True)
class CountingCertificate:
    """Coloring-independent arrowing certificate for B_n^(2).

    In any coloring, M_rb = (1/2) sum_v e(N_R(v), N_B(v)) is at most half
    the sum of exact max-cuts of the neighborhoods, so the monochromatic
    count M = T - M_rb is at least mono_lower; if that beats the book-free
    budget (n-1) e(G)/3, every coloring has a monochromatic B_n^(2)."""

    n: int
    T: int
    mrb_upper: int
    budget: Fraction

    @property
    def mono_lower(self) -> int:
        return self.T - self.mrb_upper

    @property
    def fires(self) -> bool:
        return self.mono_lower > self.budget


def counting_certificate_b2(g: Graph, n: int, lim=None) -> CountingCertificate:
    """Evaluate the k=2 counting certificate on g for target B_n^(2)."""
    if n < 1:
        raise InputError("n must be positive")
    cap = getattr(lim, "maxcut_cap", 28) if lim is not None else 28
    cut_sum = 0
    for v in range(g.n):
        nbhd, _ = induced_subgraph(g, g.adj[v])
        if nbhd.n > cap:
            raise LimitsError(
                f"neighborhood of vertex {v} has {nbhd.n} vertices, beyond max-cut cap {cap}")
        cut_sum += maxcut_exact(nbhd, cap=cap)
    t = triangle_count(g)
    return CountingCertificate(
        n=n,
        T=t,
        mrb_upper=cut_sum // 2,
        budget=Fraction(n - 1) * g.edge_count / 3,
    )


@dataclass(frozen=True)
class UpperParams:
    """The small constants delta and epsilon used on the regularity route."""

    k: int
    c: float
    gamma: float
    p: float
    p0: float
    delta: float
    epsilon: float


def upper_params(k: int, c: float, gamma: float) -> UpperParams:
    """delta = min{gamma/(4c), p0^k gamma / 2^(k+5)};
    epsilon = min{(delta p)^k / k^2, (p0/2)^C(k,2) / k^2}."""
    if k < 2:
        raise InputError("the regularity parameters are defined for k >= 2")
    if c <= 1:
        raise InputError("c must exceed 1")
    if gamma <= 0:
        raise InputError("gamma must be positive")
    base = c ** (-1.0 / k)
    p = base * (1.0 + gamma)
    p0 = base * (1.0 + gamma / 2.0)
    delta = min(gamma / (4.0 * c), p0 ** k * gamma / 2 ** (k + 5))
    epsilon = min((delta * p) ** k / k ** 2, (p0 / 2.0) ** math.comb(k, 2) / k ** 2)
    return UpperParams(k=k, c=c, gamma=gamma, p=p, p0=p0, delta=delta, epsilon=epsilon)


@dataclass(frozen=True)
class AuditReport:
    """Maximum observed deviations from the p-quasirandom expectations.

    degree and codegree deviations are normalized by N; internal-edge and
    cross-edge deviations by N^2.  The tolerance is an engineering choice:
    the asymptotic statements carry unquantified o(N) terms.
    """

    N: int
    p: float
    subset_samples: int
    degree_dev: float
    codegree_dev: float
    internal_dev: float
    cross_dev: float
    tolerance: Optional[float] = None

    @property
    def max_dev(self) -> float:
        return max(self.degree_dev, self.codegree_dev, self.internal_dev, self.cross_dev)

    @property
    def within_tolerance(self) -> Optional[bool]:
        if self.tolerance is None:
            return None
        return self.max_dev <= self.tolerance


def quasirandom_audit(g: Graph, p: float, subset_samples: int, seed: Seed = Seed(0),
                      tolerance: Optional[float] = None) -> AuditReport:
    """Sampled audit of the four quasirandomness properties.

    Codegrees are checked exactly over all vertex pairs; vertex degrees into
    subsets, internal edge counts, and cross edge counts are checked on
    uniformly random subsets of size N/4 .. N/2.  Baselines are the exact
    finite-size expectations (p * |U \\ {v}|, p^2 (N-2), p C(|U|,2),
    p |U||W|), so the complete graph at p=1 reports zero deviation.
    """
    if not 0.0 < p <= 1.0:
        raise InputError("p must lie in (0,1]")
    N = g.n
    if N == 0:
        return AuditReport(N=0, p=p, subset_samples=0, degree_dev=0.0,
                           codegree_dev=0.0, internal_dev=0.0, cross_dev=0.0,
                           tolerance=tolerance)

    codeg_dev = 0.0
    for u in range(N):
        for v in range(u + 1, N):
            codeg = (g.adj[u] & g.adj[v]).bit_count()
            codeg_dev = max(codeg_dev, abs(codeg - p * p * (N - 2)))

    rng = random.Random(splitmix64(seed.key(0x41_55_44)))
    lo, hi = max(1, N // 4), max(1, N // 2)
    deg_dev = 0.0
    int_dev = 0.0
    cross_dev = 0.0
    verts = list(range(N))
    for _ in range(subset_samples):
        size = rng.randint(lo, hi)
        subset = rng.sample(verts, size)
        mask = 0
        for v in subset:
            mask |= 1 << v
        v0 = rng.randrange(N)
        deg = (g.adj[v0] & mask).bit_count()
        slots = size - (1 if mask >> v0 & 1 else 0)
        deg_dev = max(deg_dev, abs(deg - p * slots))
        e_in = sum((g.adj[v] & mask).bit_count() for v in subset) // 2
        int_dev = max(int_dev, abs(e_in - p * math.comb(size, 2)))
        # disjoint second subset for the cross-edge property
        rest = [v for v in verts if not mask & (1 << v)]
        if rest:
            size2 = rng.randint(1, min(len(rest), hi))
            other = rng.sample(rest, size2)
            omask = 0
            for v in other:
                omask |= 1 << v
            e_cross = sum((g.adj[v] & omask).bit_count() for v in subset)
            cross_dev = max(cross_dev, abs(e_cross - p * size * size2))

    return AuditReport(
        N=N, p=p, subset_samples=subset_samples,
        degree_dev=deg_dev / N,
        codegree_dev=codeg_dev / N,
        internal_dev=int_dev / (N * N),
        cross_dev=cross_dev / (N * N),
        tolerance=tolerance,
    )
