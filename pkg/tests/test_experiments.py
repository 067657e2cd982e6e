import json

import pytest

from bookramsey.arrowing import DeciderLimits, TargetSpec, decide_star_fast
from bookramsey.errors import InputError
from bookramsey.experiments import (
    CSV_HEADER,
    ExperimentConfig,
    SweepRow,
    bisect_threshold,
    estimate_arrow_probability,
    format_csv,
    sweep,
    wilson_interval,
)
from bookramsey.sampler import Seed, sample_gnp


def star_cfg(N=30, n=8, samples=20, p_grid=(0.3, 0.6), workers=1, seed=5):
    return ExperimentConfig(target=TargetSpec("book", 1, n), N=N,
                            p_grid=p_grid, samples_per_p=samples,
                            seed=Seed(seed), decider="star", workers=workers)


class TestConfig:
    def test_from_book_params(self):
        cfg = ExperimentConfig.from_book_params(
            k=1, c=2.0, n=400, p_grid=[0.4, 0.6], samples_per_p=10,
            seed=Seed(1), decider="star")
        assert cfg.N == 1600

    def test_grid_must_increase(self):
        with pytest.raises(InputError):
            star_cfg(p_grid=(0.5, 0.4))

    def test_star_decider_needs_star_target(self):
        with pytest.raises(InputError):
            ExperimentConfig(target=TargetSpec("book", 2, 3), N=20,
                             p_grid=(0.5,), samples_per_p=5, seed=Seed(0),
                             decider="star")


class TestWilson:
    def test_zero_of_hundred(self):
        lo, hi = wilson_interval(0, 100)
        assert lo == 0.0 and abs(hi - 0.0370) < 5e-4

    def test_contains_point_estimate(self):
        for s, t in ((3, 10), (50, 60), (1, 1)):
            lo, hi = wilson_interval(s, t)
            assert lo <= s / t <= hi

    def test_empty_trials(self):
        assert wilson_interval(0, 0) == (0.0, 1.0)


class TestSweepRow:
    def test_band_and_estimate(self):
        row = SweepRow(p=0.5, samples=10, arrows=4, not_arrows=4, unknown=2)
        assert row.decided == 8 and row.p_hat == 0.5
        assert row.band == (0.4, 0.6) and row.unknown_fraction == 0.2


class TestEstimate:
    def test_p_zero_never_arrows(self):
        cfg = star_cfg(p_grid=(0.0, 0.5))
        row = estimate_arrow_probability(cfg, 0.0)
        assert row.arrows == 0 and row.p_hat == 0.0

    def test_p_one_k6_regime(self):
        cfg = ExperimentConfig(target=TargetSpec("book", 2, 1), N=6,
                               p_grid=(1.0,), samples_per_p=5, seed=Seed(2),
                               decider="exact", limits=DeciderLimits())
        row = estimate_arrow_probability(cfg, 1.0)
        assert row.p_hat == 1.0 and row.unknown == 0

    def test_deterministic(self):
        cfg = star_cfg()
        a = estimate_arrow_probability(cfg, 0.5)
        b = estimate_arrow_probability(cfg, 0.5)
        assert a == b

    def test_monotone_coupled_samples(self):
        # the counter-based sampler couples p1 < p2 into nested graphs, so an
        # arrows verdict can never flip to not_arrows when p grows
        n = 8
        for i in range(50):
            s = Seed(60).child(i)
            g1 = sample_gnp(24, 0.35, s)
            g2 = sample_gnp(24, 0.65, s)
            for u in range(24):
                assert g1.adj[u] & ~g2.adj[u] == 0  # coupling: g1 subgraph of g2
            v1 = decide_star_fast(g1, n, build_evidence=False)
            v2 = decide_star_fast(g2, n, build_evidence=False)
            assert not (v1.outcome == "arrows" and v2.outcome == "not_arrows")


class TestSweep:
    def test_csv_format(self, tmp_path):
        cfg = star_cfg()
        csv = tmp_path / "out.csv"
        manifest = tmp_path / "out.json"
        result = sweep(cfg, csv_path=csv, manifest_path=manifest)
        lines = csv.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + len(cfg.p_grid)
        meta = json.loads(manifest.read_text())
        assert meta["master_seed"] == "5"
        assert meta["config"]["N"] == 30
        assert len(meta["cell_wall_seconds"]) == len(cfg.p_grid)
        assert all(r.arrows + r.not_arrows + r.unknown == r.samples
                   for r in result.rows)

    def test_unwritable_path_fails_before_sampling(self, tmp_path):
        cfg = star_cfg(samples=100_000)  # would take a while if it sampled
        with pytest.raises(OSError):
            sweep(cfg, csv_path=tmp_path / "missing" / "out.csv")

    def test_worker_count_invariance(self, tmp_path):
        cfg1 = star_cfg(N=40, samples=16, workers=1)
        cfg4 = star_cfg(N=40, samples=16, workers=4)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        sweep(cfg1, csv_path=a)
        sweep(cfg4, csv_path=b)
        assert a.read_bytes() == b.read_bytes()

    def test_format_csv_roundtrips_floats(self):
        cfg = star_cfg(samples=7)
        result = sweep(cfg)
        text = format_csv(result)
        row = text.splitlines()[1].split(",")
        assert float(row[0]) == cfg.p_grid[0]
        assert int(row[1]) == 7


class TestBisect:
    def test_wide_tolerance_returns_midpoint(self):
        cfg = star_cfg()
        res = bisect_threshold(cfg, (0.2, 0.8), tolerance=0.7)
        assert res.p_star_estimate == 0.5 and res.iterations == 0

    def test_invalid_bracket_rejected(self):
        cfg = star_cfg(N=40, n=6, samples=40)
        # both endpoints arrow with overwhelming probability at these ps
        with pytest.raises(InputError):
            bisect_threshold(cfg, (0.8, 0.99), tolerance=0.01)

    def test_bad_bracket_order(self):
        cfg = star_cfg()
        with pytest.raises(InputError):
            bisect_threshold(cfg, (0.6, 0.4), tolerance=0.01)

    def test_small_instance_converges(self):
        # N=60, star n=12: transition near (2n-1)/N ~ 0.38
        cfg = star_cfg(N=60, n=12, samples=60, p_grid=(0.1, 0.9), seed=9)
        res = bisect_threshold(cfg, (0.05, 0.95), tolerance=0.05)
        assert res.bracket[1] - res.bracket[0] <= 0.05
        assert 0.2 <= res.p_star_estimate <= 0.6
        assert res.samples_used > 0
