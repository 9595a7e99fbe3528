import math

import pytest

from ltlrl.exceptions import BoundViolatedError
from ltlrl.harness import (
    CurvePoint, ExperimentConfig, check_lower_bound, curves_by_p,
    default_n_grid, default_p_grid, estimate_pac_prob, find_intercept,
    geometric_grid, read_curves_csv, rep_seed, sample_lower_bound,
    smoke_config, sweep, wilson_stderr, write_curves_csv, write_curves_svg,
)


class TestGrids:
    def test_first_pair_p_grid(self):
        grid = default_p_grid("simple-1")
        assert len(grid) == 5
        for i, p in enumerate(grid, start=1):
            assert abs(p - 10.0 ** (-(i + 1) / 2)) <= 1e-15

    def test_first_pair_n_grid(self):
        grid = default_n_grid("simple-1")
        assert len(grid) == 21
        assert grid[0] == 10 and grid[-1] == 100000

    def test_gridworld_grids(self):
        p = default_p_grid("gridworld")
        assert len(p) == 5
        assert abs(p[0] - 0.9) <= 1e-12 and abs(p[-1] - 0.6) <= 1e-12
        n = default_n_grid("gridworld")
        assert n[0] == 3540 and n[-1] == 90000 and len(n) == 21

    def test_default_full_sweep_has_105_cells(self):
        cfg = ExperimentConfig()
        assert len(cfg.p_grid) * len(cfg.n_grid) == 105

    def test_geometric_endpoints(self):
        g = geometric_grid(2.0, 32.0, 5)
        assert abs(g[0] - 2.0) <= 1e-12 and abs(g[-1] - 32.0) <= 1e-12


class TestStderr:
    def test_wilson_never_zero(self):
        assert wilson_stderr(0, 20) > 0
        assert wilson_stderr(20, 20) > 0

    def test_matches_formula(self):
        s, n = 7, 25
        pt = (s + 1) / (n + 2)
        assert wilson_stderr(s, n) == math.sqrt(pt * (1 - pt) / n)

    def test_extreme_runs_need_about_hundred_reps(self):
        n = next(n for n in range(20, 1000) if wilson_stderr(n, n) <= 0.01)
        assert 90 <= n <= 110


class TestIntercept:
    def test_interpolation_formula(self):
        pts = [CurvePoint(0.1, 100, 0.85, 0.01, 99),
               CurvePoint(0.1, 178, 0.93, 0.01, 99)]
        expect = math.exp(math.log(100) + (0.9 - 0.85) / (0.93 - 0.85)
                          * (math.log(178) - math.log(100)))
        got = find_intercept(pts, 0.9)
        assert abs(got - expect) <= 1e-9
        assert abs(got - 143.4) <= 0.1

    def test_never_crossing_is_none(self):
        pts = [CurvePoint(0.1, n, 0.5 + 0.02 * i, 0.01, 99)
               for i, n in enumerate((10, 100, 1000))]
        assert find_intercept(pts, 0.9) is None

    def test_crossing_before_grid_clamps(self):
        pts = [CurvePoint(0.1, 10, 0.95, 0.01, 99),
               CurvePoint(0.1, 100, 1.0, 0.01, 99)]
        assert find_intercept(pts, 0.9) == 10.0


class TestLowerBound:
    def test_reference_values(self):
        assert abs(sample_lower_bound(0.1, 0.1) - 15.27) <= 0.01
        assert abs(sample_lower_bound(0.01, 0.1) - 160.14) <= 0.01

    def test_half_delta_is_trivial(self):
        for p in (0.9, 0.1, 1e-3):
            assert sample_lower_bound(p, 0.5) == 0.0

    def test_violation_raises(self):
        with pytest.raises(BoundViolatedError):
            check_lower_bound({0.01: 10.0}, 0.1)

    def test_censored_is_not_a_violation(self):
        report = check_lower_bound({0.01: None, 0.1: 100.0}, 0.1)
        assert [e.censored for e in report.entries] == [False, True]
        assert not report.violations


class TestSeeds:
    def test_distinct_across_indices(self):
        seeds = {rep_seed(0, pi, ni, r) for pi in range(3) for ni in range(3)
                 for r in range(3)}
        assert len(seeds) == 27

    def test_deterministic(self):
        assert rep_seed(7, 1, 2, 3) == rep_seed(7, 1, 2, 3)


def tiny_config(master_seed=5):
    return ExperimentConfig(
        environment="simple-1", p_grid=(0.3,), n_grid=(10, 3000),
        target_se=0.08, master_seed=master_seed)


class TestEstimate:
    def test_stop_rule_contract(self):
        cfg = tiny_config()
        pt = estimate_pac_prob(cfg, 0.3, 3000)
        assert pt.repetitions >= cfg.min_reps
        assert pt.stderr <= cfg.target_se
        assert 0.0 <= pt.pac_estimate <= 1.0

    def test_first_pair_anchor_cells(self):
        cfg = ExperimentConfig(environment="simple-1", p_grid=(0.1,),
                               n_grid=(10, 100000), master_seed=1)
        low = estimate_pac_prob(cfg, 0.1, 10)
        assert low.pac_estimate <= 0.6
        assert low.stderr <= 0.01
        high = estimate_pac_prob(cfg, 0.1, 100000)
        assert high.pac_estimate >= 0.9

    def test_sweep_reproducible(self, tmp_path):
        a = sweep(tiny_config())
        b = sweep(tiny_config())
        assert a == b
        f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_curves_csv(f1, tiny_config(), a)
        write_curves_csv(f2, tiny_config(), b)
        assert f1.read_bytes() == f2.read_bytes()

    def test_master_seed_changes_results(self):
        def transition_cell(master_seed):
            cfg = ExperimentConfig(environment="simple-1", p_grid=(0.3,),
                                   n_grid=(80,), target_se=0.08,
                                   master_seed=master_seed)
            return sweep(cfg)
        assert transition_cell(5) != transition_cell(6)

    def test_worker_pool_matches_sequential(self, monkeypatch):
        sequential = sweep(tiny_config())
        monkeypatch.setenv("WORKBENCH_THREADS", "2")
        pooled = sweep(tiny_config())
        assert pooled == sequential

    def test_witness_pair_environment(self):
        cfg = ExperimentConfig(environment="witness-pair", witness_formula="G a",
                               p_grid=(0.3,), n_grid=(10, 5000),
                               target_se=0.08, master_seed=2)
        low, high = sweep(cfg)
        assert low.pac_estimate < 0.9 <= high.pac_estimate


class TestCsvSvg:
    def test_round_trip(self, tmp_path):
        cfg = tiny_config()
        points = sweep(cfg)
        path = tmp_path / "curves.csv"
        write_curves_csv(path, cfg, points)
        rows = read_curves_csv(path)
        assert len(rows) == len(points)
        assert rows[0]["environment"] == "simple-1"
        assert rows[0]["p"] == 0.3
        grouped = curves_by_p(rows)
        assert list(grouped) == [0.3]
        assert [pt.n_samples for pt in grouped[0.3]] == [10, 3000]

    def test_svg_emission(self, tmp_path):
        cfg = tiny_config()
        points = sweep(cfg)
        csv_path = tmp_path / "curves.csv"
        write_curves_csv(csv_path, cfg, points)
        svg_path = tmp_path / "fig.svg"
        write_curves_svg(svg_path, read_curves_csv(csv_path))
        text = svg_path.read_text()
        assert text.startswith("<svg")
        assert text.count("<polyline") == 1
        assert "1e3" in text or "1e4" in text


def test_smoke_config_shape():
    cfg = smoke_config()
    assert len(cfg.p_grid) == 3 and len(cfg.n_grid) == 11
    assert cfg.n_grid[0] == 10 and cfg.n_grid[-1] == 100000
