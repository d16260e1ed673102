import numpy as np
import pytest

from adacm.fitter import init_params
from adacm.lut import identity_lut, lut_apply_colors
from adacm.metrics import psnr
from adacm.mlp import (
    ColorMlpParams,
    ParamsFormatError,
    compile_lut,
    load_params,
    mlp_backward,
    mlp_forward,
    mlp_forward_colors,
    param_count,
    save_params,
)

from oracles import finite_difference_grad, mlp_forward_oracle


def zero_params(n, b3=(0.0, 0.0, 0.0)):
    return ColorMlpParams(
        n, np.zeros((n, 3)), np.zeros(n), np.zeros((n, n)),
        np.zeros(n), np.zeros((3, n)), np.array(b3, dtype=float),
    )


def random_params(n, seed):
    rng = np.random.default_rng(seed)
    return ColorMlpParams.from_flat(n, rng.normal(0.0, 0.3, param_count(n)))


class TestForward:
    def test_dead_network_passes_bias(self):
        params = zero_params(4, b3=(0.1, 0.2, 0.3))
        assert np.allclose(mlp_forward([0.7, 0.1, 0.9], params), [0.1, 0.2, 0.3], atol=0)

    def test_hand_composed_n1(self):
        params = ColorMlpParams(
            1, np.array([[1.0, 0.0, 0.0]]), np.zeros(1), np.array([[1.0]]),
            np.zeros(1), np.array([[1.0], [0.0], [0.0]]), np.zeros(3),
        )
        assert np.allclose(mlp_forward([0.7, 0.3, 0.9], params), [0.7, 0.0, 0.0], atol=1e-15)

    @pytest.mark.parametrize("n,expected", [(5, 68), (10, 183), (20, 563), (30, 1143)])
    def test_param_count(self, n, expected):
        assert param_count(n) == expected
        assert random_params(n, 0).to_flat().size == expected

    def test_matches_oracle(self):
        params = random_params(6, seed=1)
        rng = np.random.default_rng(2)
        for color in rng.random((20, 3)):
            assert np.allclose(mlp_forward(color, params), mlp_forward_oracle(color, params), atol=1e-12)

    def test_output_not_clamped(self):
        params = zero_params(2, b3=(2.0, -1.0, 0.5))
        assert np.allclose(mlp_forward([0.5, 0.5, 0.5], params), [2.0, -1.0, 0.5], atol=0)

    def test_piecewise_linear_continuity(self):
        params = random_params(8, seed=3)
        bound = (
            np.linalg.norm(params.w1, 2)
            * np.linalg.norm(params.w2, 2)
            * np.linalg.norm(params.w3, 2)
        )
        rng = np.random.default_rng(4)
        a = rng.random(3)
        d = rng.normal(0, 1, 3)
        d /= np.linalg.norm(d)
        prev = mlp_forward(a, params)
        step = 1e-3
        for i in range(1, 50):
            cur = mlp_forward(a + i * step * d, params)
            assert np.linalg.norm(cur - prev) <= bound * step + 1e-12
            prev = cur


class TestBackward:
    def test_perfect_fit_zero_loss_zero_grad(self):
        params = zero_params(3, b3=(0.2, 0.4, 0.6))
        batch = [([0.1, 0.2, 0.3], [0.2, 0.4, 0.6]), ([0.9, 0.9, 0.9], [0.2, 0.4, 0.6])]
        loss, grad = mlp_backward(batch, params)
        assert loss == 0.0
        assert np.all(grad.to_flat() == 0.0)

    def test_empty_batch_rejected(self):
        with pytest.raises(ValueError):
            mlp_backward([], zero_params(2))

    @pytest.mark.parametrize("seed", range(5))
    def test_gradient_matches_finite_differences(self, seed):
        rng = np.random.default_rng(seed)
        n = 5
        params = ColorMlpParams.from_flat(n, rng.normal(0.0, 0.4, param_count(n)))
        x = rng.random((8, 3))
        t = rng.random((8, 3))
        _, grad = mlp_backward((x, t), params)

        def loss_at(flat):
            loss, _ = mlp_backward((x, t), ColorMlpParams.from_flat(n, flat))
            return loss

        fd = finite_difference_grad(loss_at, params.to_flat(), step=1e-4)
        analytic = grad.to_flat()
        denom = np.maximum(np.abs(fd), np.abs(analytic))
        rel = np.abs(analytic - fd) / np.where(denom > 1e-6, denom, 1.0)
        abs_err = np.abs(analytic - fd)
        assert np.all((rel <= 1e-4) | (abs_err <= 1e-6))

    def test_duplicated_batch_invariant(self):
        params = random_params(4, seed=6)
        rng = np.random.default_rng(7)
        x = rng.random((6, 3))
        t = rng.random((6, 3))
        loss1, grad1 = mlp_backward((x, t), params)
        loss2, grad2 = mlp_backward((np.tile(x, (3, 1)), np.tile(t, (3, 1))), params)
        assert loss1 == pytest.approx(loss2, abs=1e-12)
        assert np.allclose(grad1.to_flat(), grad2.to_flat(), atol=1e-12)


class TestCompile:
    def test_zero_weights_constant_lut(self):
        lut = compile_lut(zero_params(3, b3=(0.5, 0.5, 0.5)), 4)
        assert np.all(lut.table == 0.5)

    def test_invalid_size(self):
        with pytest.raises(ValueError):
            compile_lut(zero_params(2), 1)

    def test_grid_points_match_clamped_forward(self):
        params = random_params(6, seed=8)
        lut = compile_lut(params, 33)
        rng = np.random.default_rng(9)
        idx = rng.integers(0, 33, (100, 3))
        colors = idx / 32.0
        expected = np.clip(mlp_forward_colors(colors, params), 0.0, 1.0)
        out = lut_apply_colors(colors, lut)
        assert np.max(np.abs(out - expected)) <= 1e-6

    def test_cells_stored_unclamped(self):
        lut = compile_lut(zero_params(2, b3=(2.0, -1.0, 0.5)), 3)
        assert np.all(lut.table[:, 0] == 2.0)
        assert np.all(lut.table[:, 1] == -1.0)

    def test_psnr_nondecreasing_in_size(self, default_fit, test_photo):
        from adacm.pipeline import run_direct, run_fast

        direct = run_direct(test_photo, default_fit.final_params)
        values = [psnr(run_fast(test_photo, default_fit.final_params, m), direct)
                  for m in (8, 16, 33, 64, 128)]
        assert all(b > a for a, b in zip(values, values[1:]))


class TestSerialization:
    def test_stream_length_n20(self):
        assert len(save_params(random_params(20, 10))) == 2260

    def test_round_trip_bit_exact(self):
        params = random_params(7, seed=11)
        blob = save_params(params)
        again = load_params(blob)
        assert save_params(again) == blob
        assert np.all(again.to_flat() == load_params(save_params(again)).to_flat())

    def test_flat_order(self):
        n = 2
        flat = np.arange(param_count(n), dtype=float)
        params = ColorMlpParams.from_flat(n, flat)
        assert np.array_equal(params.w1, [[0, 1, 2], [3, 4, 5]])
        assert np.array_equal(params.b1, [6, 7])
        assert np.array_equal(params.w2, [[8, 9], [10, 11]])
        assert np.array_equal(params.b2, [12, 13])
        assert np.array_equal(params.w3, [[14, 15], [16, 17], [18, 19]])
        assert np.array_equal(params.b3, [20, 21, 22])
        assert np.array_equal(params.to_flat(), flat)

    def test_bad_magic(self):
        blob = b"XXXX" + save_params(random_params(3, 12))[4:]
        with pytest.raises(ParamsFormatError, match="magic"):
            load_params(blob)

    def test_zero_n(self):
        import struct

        with pytest.raises(ParamsFormatError, match="N"):
            load_params(b"ACM1" + struct.pack("<I", 0))

    def test_truncated_names_lengths(self):
        blob = save_params(random_params(3, 13))
        with pytest.raises(ParamsFormatError, match=str(len(blob))):
            load_params(blob[:-4])


class TestFitterInit:
    def test_init_bounds_and_zero_biases(self):
        rng = np.random.default_rng(0)
        params = init_params(10, rng)
        assert np.all(np.abs(params.w1) <= np.sqrt(6.0 / 3))
        assert np.all(np.abs(params.w2) <= np.sqrt(6.0 / 10))
        assert np.all(np.abs(params.w3) <= np.sqrt(6.0 / 10))
        assert np.all(params.b1 == 0) and np.all(params.b2 == 0) and np.all(params.b3 == 0)
