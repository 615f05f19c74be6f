# test_channel.py - Fading, noise and receiver CSI
import numpy as np
import pytest

from src.simulation.random_streams import draw_block
from src.utils.error_handler import ConfigError, ValidationError
from src.waveform.channel import (
    apply_channel,
    complex_normal,
    corrupt_csi,
    mmse_error_variance,
    n0_to_snr_db,
    observe,
    realize,
    sample_channel,
    snr_db_to_n0,
)


class TestNoiseLevels:

    def test_snr_conversion(self):
        assert snr_db_to_n0(10.0) == pytest.approx(0.1)
        assert snr_db_to_n0(0.0) == 1.0
        assert n0_to_snr_db(0.01) == pytest.approx(20.0)
        assert n0_to_snr_db(0.0) == float('inf')

    def test_mmse_variance(self):
        assert mmse_error_variance(1.0) == 0.5
        assert mmse_error_variance(0.0) == 1.0
        with pytest.raises(ValidationError):
            mmse_error_variance(-1.0)


class TestDraws:

    def test_complex_normal_statistics(self, rng):
        z = complex_normal(rng, 200_000, 2.0)
        assert np.mean(np.abs(z) ** 2) == pytest.approx(2.0, rel=0.02)
        assert np.var(z.real) == pytest.approx(np.var(z.imag), rel=0.03)
        assert abs(np.mean(z)) < 0.02

    def test_channel_is_unit_power(self, rng):
        h = sample_channel(100_000, rng)
        assert np.mean(np.abs(h) ** 2) == pytest.approx(1.0, rel=0.02)

    def test_same_seed_same_draws(self):
        a = sample_channel(8, np.random.default_rng(5))
        b = sample_channel(8, np.random.default_rng(5))
        np.testing.assert_array_equal(a, b)

    def test_subcarriers_are_uncorrelated(self):
        # fading and noise as the sweep draws them: one row per trial
        draws = [draw_block(3, 10.0, block, 4, 6) for block in range(5)]
        for name in ('h', 'w', 'e'):
            z = np.concatenate([getattr(d, name) for d in draws])
            cov = (z.conj().T @ z) / z.shape[0]
            off = cov[~np.eye(6, dtype=bool)]
            # |mean of T unit-variance products| has standard deviation 1/sqrt(T)
            assert np.abs(off).max() < 4 / np.sqrt(z.shape[0]), name
            np.testing.assert_allclose(np.diag(cov).real, 1.0, atol=0.08)

    def test_apply_channel_noiseless(self, rng):
        x = np.array([1, 0, -1, 0], dtype=complex)
        h = sample_channel(4, rng)
        np.testing.assert_array_equal(apply_channel(x, h, 0.0, rng), h * x)

    def test_apply_channel_shape_check(self, rng):
        with pytest.raises(ValidationError):
            apply_channel(np.ones(3), np.ones(4), 0.1, rng)

    def test_csi_error_variance(self, rng):
        h = np.zeros(200_000, dtype=complex)
        e = corrupt_csi(h, 1.0, rng)
        assert np.mean(np.abs(e) ** 2) == pytest.approx(0.5, rel=0.02)

    def test_csi_needs_positive_snr(self, rng):
        with pytest.raises(ValidationError):
            corrupt_csi(np.ones(4), 0.0, rng)


class TestObserve:

    def test_noiseless_is_perfect_even_under_mmse(self, rng):
        x = np.array([[1, 1j, 0, 0]])
        h, w, e = (complex_normal(rng, x.shape) for _ in range(3))
        y, real = observe(x, h, w, e, 0.0, 'mmse')
        np.testing.assert_array_equal(y, h * x)
        assert real.perfect_csi
        assert real.snr_db == float('inf')

    def test_mmse_uses_error_draw(self, rng):
        x = np.ones((1, 4))
        h, w, e = (complex_normal(rng, x.shape) for _ in range(3))
        y, real = observe(x, h, w, e, 0.25, 'mmse')
        np.testing.assert_allclose(y, h + 0.5 * w)
        np.testing.assert_allclose(real.h_hat, h + np.sqrt(0.2) * e)
        assert not real.perfect_csi

    def test_perfect_ignores_error_draw(self, rng):
        x = np.ones((1, 4))
        h, w, e = (complex_normal(rng, x.shape) for _ in range(3))
        _, real = observe(x, h, w, e, 0.25, 'perfect')
        np.testing.assert_array_equal(real.h_hat, h)

    def test_unknown_csi_mode(self, rng):
        with pytest.raises(ConfigError):
            observe(np.ones(2), np.ones(2), np.ones(2), np.ones(2), 0.1, 'genie')

    def test_realize_shares_h_and_noise_across_csi_modes(self):
        x = np.ones((3, 4), dtype=complex)
        y1, r1 = realize(x, np.random.default_rng(9), 0.1, 'perfect')
        y2, r2 = realize(x, np.random.default_rng(9), 0.1, 'mmse')
        np.testing.assert_array_equal(y1, y2)
        np.testing.assert_array_equal(r1.h, r2.h)
        assert not np.array_equal(r1.h_hat, r2.h_hat)
