# channel.py - Rayleigh fading per subcarrier, AWGN and MMSE CSI error
import logging
from dataclasses import dataclass

import numpy as np

from ..utils.error_handler import ConfigError, ValidationError

logger = logging.getLogger(__name__)

CSI_MODES = ('perfect', 'mmse')


def snr_db_to_n0(snr_db: float) -> float:
    """γ̄ = 1/N0"""
    return float(10.0 ** (-snr_db / 10.0))


def n0_to_snr_db(n0: float) -> float:
    if n0 <= 0:
        return float('inf')
    return float(-10.0 * np.log10(n0))


def mmse_error_variance(snr_linear: float) -> float:
    """σ_e² = 1/(1+γ̄)"""
    if snr_linear < 0:
        raise ValidationError(f"SNR must be non-negative, got {snr_linear}")
    return 1.0 / (1.0 + snr_linear)


def complex_normal(rng: np.random.Generator, shape, variance: float = 1.0) -> np.ndarray:
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


@dataclass(frozen=True)
class ChannelRealization:
    """Diagonal channel h, receiver CSI h_hat and noise level"""
    h: np.ndarray
    h_hat: np.ndarray
    n0: float
    snr_db: float

    @property
    def perfect_csi(self) -> bool:
        return bool(np.array_equal(self.h, self.h_hat))


def sample_channel(n: int, rng: np.random.Generator) -> np.ndarray:
    """N i.i.d. CN(0,1) gains"""
    return complex_normal(rng, n)


def apply_channel(x: np.ndarray, h: np.ndarray, n0: float, rng: np.random.Generator) -> np.ndarray:
    """y = h ⊙ x + w, w ~ CN(0, N0)"""
    x = np.asarray(x, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if x.shape != h.shape:
        raise ValidationError(f"Shape mismatch: x {x.shape} vs h {h.shape}")
    if n0 < 0:
        raise ValidationError(f"Noise variance must be non-negative, got {n0}")
    return h * x + complex_normal(rng, x.shape, n0)


def corrupt_csi(h: np.ndarray, snr_linear: float, rng: np.random.Generator) -> np.ndarray:
    """ĥ = h + e, e ~ CN(0, 1/(1+γ̄))"""
    if snr_linear <= 0:
        raise ValidationError(f"CSI corruption needs γ̄ > 0, got {snr_linear}")
    h = np.asarray(h, dtype=complex)
    return h + complex_normal(rng, h.shape, mmse_error_variance(snr_linear))


def observe(x: np.ndarray, h: np.ndarray, w: np.ndarray, e: np.ndarray, n0: float,
            csi_mode: str = 'perfect'):
    """
    y = h ⊙ x + √N0 w and the receiver CSI from unit-variance draws (h, w, e)

    Under MMSE CSI ĥ = h + σ_e e with σ_e² = 1/(1+γ̄); with N0 = 0 the CSI is
    perfect.
    """
    if csi_mode not in CSI_MODES:
        raise ConfigError(f"Unknown CSI mode '{csi_mode}', expected one of {CSI_MODES}")
    if n0 < 0:
        raise ValidationError(f"Noise variance must be non-negative, got {n0}")
    x = np.asarray(x, dtype=complex)
    y = h * x + np.sqrt(n0) * w
    if csi_mode == 'mmse' and n0 > 0:
        h_hat = h + np.sqrt(mmse_error_variance(1.0 / n0)) * e
    else:
        h_hat = h
    return y, ChannelRealization(h, h_hat, n0, n0_to_snr_db(n0))


def realize(x: np.ndarray, rng: np.random.Generator, n0: float, csi_mode: str = 'perfect'):
    """
    One channel use for a batch of transmit vectors (trials, N)

    Draw order is fixed (h, noise, CSI error) and the CSI error is drawn even
    under perfect CSI, so every detector and CSI mode sees the same h and noise.

    Returns:
        (y, ChannelRealization) with batched h and h_hat
    """
    shape = np.shape(x)
    h = complex_normal(rng, shape)
    w = complex_normal(rng, shape)
    e = complex_normal(rng, shape)
    return observe(x, h, w, e, n0, csi_mode)
