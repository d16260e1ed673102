import numpy as np
import pytest

from adacm.fitter import (
    FitConfig,
    FitReport,
    eval_error_255,
    fit_mlp_to_lut,
    sweep_hidden_units,
)
from adacm.lut import Lut3d, identity_lut

from oracles import eval_error_255_oracle

QUICK = FitConfig(steps=2000)


def constant_lut(size, value):
    return Lut3d(size, np.full((size**3, 3), value))


class TestFit:
    def test_identity_lut_fits_tightly(self):
        report = fit_mlp_to_lut(identity_lut(33), QUICK)
        assert report.final_error_255 <= 1.0

    def test_constant_lut_fits(self):
        report = fit_mlp_to_lut(constant_lut(5, 0.37), FitConfig(steps=3000, eval_grid_size=5))
        assert report.final_error_255 <= 0.5

    def test_deterministic(self, reference_lut):
        cfg = FitConfig(steps=200, rng_seed=5)
        a = fit_mlp_to_lut(reference_lut, cfg)
        b = fit_mlp_to_lut(reference_lut, cfg)
        assert a.final_error_255 == b.final_error_255
        assert np.array_equal(a.final_params.to_flat(), b.final_params.to_flat())
        assert a.loss_trace == b.loss_trace

    def test_loss_trace_trends_down(self, reference_lut):
        report = fit_mlp_to_lut(reference_lut, QUICK)
        losses = [loss for _, loss in report.loss_trace]
        k = max(1, len(losses) // 10)
        assert np.mean(losses[-k:]) < np.mean(losses[:k])
        steps = [s for s, _ in report.loss_trace]
        assert steps == sorted(steps)

    def test_input_lut_not_mutated(self, reference_lut):
        before = reference_lut.table.copy()
        fit_mlp_to_lut(reference_lut, FitConfig(steps=50))
        assert np.array_equal(reference_lut.table, before)

    def test_eval_matches_brute_force(self, reference_lut):
        report = fit_mlp_to_lut(reference_lut, FitConfig(steps=300, eval_grid_size=9))
        oracle = eval_error_255_oracle(report.final_params, reference_lut.table, 33, 9)
        assert report.final_error_255 == pytest.approx(oracle, abs=1e-6)
        assert eval_error_255(report.final_params, reference_lut, 9) == pytest.approx(oracle, abs=1e-6)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            FitConfig(steps=0)
        with pytest.raises(ValueError):
            FitConfig(learning_rate=0.0)
        with pytest.raises(ValueError):
            FitConfig(eval_grid_size=1)


class TestSweep:
    def test_capacity_trend(self, reference_lut):
        results = sweep_hidden_units(reference_lut, [5, 10, 20], FitConfig(steps=2500))
        errors = [err for _, err in results]
        assert errors[0] > errors[1] > errors[2]

    def test_single_entry_matches_standalone(self, reference_lut):
        cfg = FitConfig(steps=300, rng_seed=11)
        (entry,) = sweep_hidden_units(reference_lut, [20], cfg)
        standalone = fit_mlp_to_lut(reference_lut, cfg)
        assert entry == (20, standalone.final_error_255)

    def test_constant_lut_any_n(self):
        lut = constant_lut(5, 0.6)
        for _, err in sweep_hidden_units(lut, [1, 3], FitConfig(steps=800, eval_grid_size=5)):
            assert err <= 0.5

    def test_empty_sizes_rejected(self, reference_lut):
        with pytest.raises(ValueError):
            sweep_hidden_units(reference_lut, [])

    def test_report_invariants(self, reference_lut):
        report = fit_mlp_to_lut(reference_lut, FitConfig(steps=120))
        assert isinstance(report, FitReport)
        assert report.final_error_255 >= 0.0
        assert len(report.loss_trace) >= 1
