"""Monte Carlo threshold experiments: per-p arrowing probability estimates,
grid sweeps with CSV/manifest persistence, and threshold bisection.

Each sample gets its own derived seed, so aggregation is order-independent
and results are byte-identical regardless of worker count.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from statistics import NormalDist
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .arrowing import (
    DeciderLimits,
    TargetSpec,
    decide_exact,
    decide_sandwich,
    decide_star_fast,
)
from .errors import InputError, LimitsError
from .sampler import Seed, sample_gnp, _uniforms, _TAG_GNP


@dataclass(frozen=True)
class ExperimentConfig:
    target: TargetSpec
    N: int
    p_grid: tuple[float, ...]
    samples_per_p: int
    seed: Seed
    decider: str = "sandwich"  # exact | star | sandwich
    limits: DeciderLimits = field(default_factory=DeciderLimits)
    workers: int = 1

    def __post_init__(self):
        if self.N < self.target.k + 1:
            raise InputError("N must be at least k+1")
        if self.samples_per_p < 1:
            raise InputError("samples_per_p must be positive")
        if any(not 0.0 <= p <= 1.0 for p in self.p_grid):
            raise InputError("p_grid values must lie in [0,1]")
        if any(b <= a for a, b in zip(self.p_grid, self.p_grid[1:])):
            raise InputError("p_grid must be strictly increasing")
        if self.decider not in ("exact", "star", "sandwich"):
            raise InputError(f"unknown decider {self.decider!r}")
        if self.decider == "star" and (self.target.shape != "book" or self.target.k != 1):
            raise InputError("star decider only applies to book targets with k=1")

    @staticmethod
    def from_book_params(k: int, c: float, n: int, p_grid: Sequence[float],
                         samples_per_p: int, seed: Seed, decider: str = "sandwich",
                         limits: Optional[DeciderLimits] = None,
                         workers: int = 1) -> "ExperimentConfig":
        return ExperimentConfig(
            target=TargetSpec("book", k, n),
            N=math.floor(c * 2 ** k * n),
            p_grid=tuple(p_grid),
            samples_per_p=samples_per_p,
            seed=seed,
            decider=decider,
            limits=limits or DeciderLimits(),
            workers=workers,
        )


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return 0.0, 1.0
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class SweepRow:
    p: float
    samples: int
    arrows: int
    not_arrows: int
    unknown: int

    @property
    def decided(self) -> int:
        return self.arrows + self.not_arrows

    @property
    def p_hat(self) -> float:
        return self.arrows / self.decided if self.decided else 0.0

    @property
    def ci(self) -> tuple[float, float]:
        return wilson_interval(self.arrows, self.decided)

    @property
    def band(self) -> tuple[float, float]:
        return self.arrows / self.samples, (self.arrows + self.unknown) / self.samples

    @property
    def unknown_fraction(self) -> float:
        return self.unknown / self.samples


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]


@dataclass(frozen=True)
class BisectResult:
    p_star_estimate: float
    bracket: tuple[float, float]
    iterations: int
    samples_used: int


@lru_cache(maxsize=8)
def _pair_index_arrays(n: int):
    iu = np.triu_indices(n, 1)
    return iu[0], iu[1]


def _star_outcome_fast(n_verts: int, n_pages: int, p: float, seed: Seed) -> Optional[str]:
    """Degree-only star verdict computed straight off the pair indicators.

    Returns None when a rare parity corner needs the full component check."""
    m = n_verts * (n_verts - 1) // 2
    u_idx, v_idx = _pair_index_arrays(n_verts)
    mask = _uniforms(seed.key(_TAG_GNP), m) < p
    degs = (np.bincount(u_idx[mask], minlength=n_verts)
            + np.bincount(v_idx[mask], minlength=n_verts))
    max_deg = int(degs.max()) if n_verts else 0
    if max_deg >= 2 * n_pages - 1:
        return "arrows"
    if not np.any(degs == 2 * n_pages - 2):
        return "not_arrows"
    return None


def _decide_sample(cfg: ExperimentConfig, p: float, cell: int, index: int) -> str:
    seed = cfg.seed.child(cell).child(index)
    if cfg.decider == "star":
        fast = _star_outcome_fast(cfg.N, cfg.target.n, p, seed)
        if fast is not None:
            return fast
    g = sample_gnp(cfg.N, p, seed)
    try:
        if cfg.decider == "star":
            verdict = decide_star_fast(g, cfg.target.n, build_evidence=False)
        elif cfg.decider == "exact":
            verdict = decide_exact(g, cfg.target, cfg.limits)
        else:
            verdict = decide_sandwich(g, cfg.target, cfg.limits, seed,
                                      build_evidence=False)
    except LimitsError:
        return "unknown"
    return verdict.outcome


def _worker(args) -> tuple[int, str]:
    cfg, p, cell, index = args
    return index, _decide_sample(cfg, p, cell, index)


def estimate_arrow_probability(cfg: ExperimentConfig, p: float, cell: int = 0,
                               samples: Optional[int] = None) -> SweepRow:
    """Sample `samples` graphs G(N,p) and decide each; Unknown outcomes are
    reported but excluded from the point estimate."""
    samples = samples if samples is not None else cfg.samples_per_p
    tasks = [(cfg, p, cell, i) for i in range(samples)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_worker, tasks, chunksize=8))
    else:
        results = [_worker(t) for t in tasks]
    counts = {"arrows": 0, "not_arrows": 0, "unknown": 0}
    for _, outcome in results:
        counts[outcome] += 1
    return SweepRow(p=p, samples=samples, arrows=counts["arrows"],
                    not_arrows=counts["not_arrows"], unknown=counts["unknown"])


CSV_HEADER = "p,samples,arrows,not_arrows,unknown,p_hat,ci_lo,ci_hi,band_lo,band_hi"


def format_csv(result: SweepResult) -> str:
    lines = [CSV_HEADER]
    for row in result.rows:
        lo, hi = row.ci
        blo, bhi = row.band
        lines.append(",".join([
            repr(row.p), str(row.samples), str(row.arrows), str(row.not_arrows),
            str(row.unknown), repr(row.p_hat), repr(lo), repr(hi),
            repr(blo), repr(bhi),
        ]))
    return "\n".join(lines) + "\n"


def sweep(cfg: ExperimentConfig, csv_path=None, manifest_path=None) -> SweepResult:
    """Estimate the arrowing probability at every grid point; optionally
    persist a CSV plus a JSON manifest (atomic writes)."""
    from .io import atomic_write

    if csv_path is not None:
        parent = Path(csv_path).resolve().parent
        if not parent.is_dir():
            raise OSError(f"output directory {parent} does not exist")
    start_ts = time.time()
    rows = []
    cell_times = []
    for cell, p in enumerate(cfg.p_grid):
        t0 = time.perf_counter()
        rows.append(estimate_arrow_probability(cfg, p, cell=cell))
        cell_times.append(time.perf_counter() - t0)
    result = SweepResult(rows=tuple(rows))
    if csv_path is not None:
        atomic_write(csv_path, format_csv(result))
    if manifest_path is not None:
        manifest = {
            "tool_version": __version__,
            "config": {
                "target": asdict(cfg.target),
                "N": cfg.N,
                "p_grid": list(cfg.p_grid),
                "samples_per_p": cfg.samples_per_p,
                "decider": cfg.decider,
                "limits": asdict(cfg.limits),
                "workers": cfg.workers,
            },
            "master_seed": str(cfg.seed.value),
            "seed_stream": str(cfg.seed.stream_index),
            "start_timestamp": start_ts,
            "end_timestamp": time.time(),
            "cell_wall_seconds": cell_times,
        }
        atomic_write(manifest_path, json.dumps(manifest, indent=2) + "\n")
    return result


def _side_of_half(cfg: ExperimentConfig, p: float, cell: int, z: float,
                  max_escalations: int = 5) -> tuple[Optional[str], int]:
    """'above'/'below' once the Wilson interval excludes 1/2, escalating the
    sample count geometrically; (None, used) if still ambiguous at the cap."""
    samples = cfg.samples_per_p
    used = 0
    for _ in range(max_escalations + 1):
        row = estimate_arrow_probability(cfg, p, cell=cell, samples=samples)
        used += samples
        lo, hi = wilson_interval(row.arrows, row.decided, z)
        if lo > 0.5:
            return "above", used
        if hi < 0.5:
            return "below", used
        samples *= 2
    return None, used


def bisect_threshold(cfg: ExperimentConfig, bracket: tuple[float, float],
                     tolerance: float, confidence: float = 0.95) -> BisectResult:
    """Bisection for the p where the arrowing probability crosses 1/2."""
    if tolerance <= 0:
        raise InputError("tolerance must be positive")
    p_lo, p_hi = bracket
    if not 0.0 <= p_lo < p_hi <= 1.0:
        raise InputError("bracket must satisfy 0 <= p_lo < p_hi <= 1")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    if p_hi - p_lo <= tolerance:
        return BisectResult(p_star_estimate=(p_lo + p_hi) / 2.0,
                            bracket=(p_lo, p_hi), iterations=0, samples_used=0)
    total = 0
    side_lo, used = _side_of_half(cfg, p_lo, cell=1_000_000, z=z)
    total += used
    side_hi, used = _side_of_half(cfg, p_hi, cell=1_000_001, z=z)
    total += used
    if side_lo != "below" or side_hi != "above":
        raise InputError(
            f"invalid initial bracket: estimate at {p_lo} is {side_lo or 'ambiguous'}, "
            f"at {p_hi} is {side_hi or 'ambiguous'}")
    iterations = 0
    while p_hi - p_lo > tolerance:
        iterations += 1
        mid = (p_lo + p_hi) / 2.0
        side, used = _side_of_half(cfg, mid, cell=1_000_002 + iterations, z=z)
        total += used
        if side is None:
            # ambiguous at the sample cap: fall back to the point estimate
            row = estimate_arrow_probability(cfg, mid, cell=2_000_000 + iterations)
            total += row.samples
            side = "above" if row.p_hat >= 0.5 else "below"
        if side == "above":
            p_hi = mid
        else:
            p_lo = mid
    return BisectResult(p_star_estimate=(p_lo + p_hi) / 2.0,
                        bracket=(p_lo, p_hi), iterations=iterations,
                        samples_used=total)
