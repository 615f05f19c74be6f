# spread_codes.py - Rotated cyclic-shift Zadoff-Chu spreading codes
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..utils.error_handler import ConfigError, ValidationError

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-12
ORTHO_TOL = 1e-9
DIFF_TOL = 1e-9


def zc_base(k: int, d: int = 1, u: int = 0) -> np.ndarray:
    """
    Base Zadoff-Chu sequence of length K.

    Parameters
    ----------
    k : int
        Sequence length (number of active subcarriers).
    d : int
        Root, relatively prime to K.
    u : int
        Offset.

    Returns
    -------
    np.ndarray
        Complex vector ``c`` with
        ``c[i] = exp(-j 2π d/K (i²/2 + u i))`` for even K and
        ``c[i] = exp(-j 2π d/K (i(i+1)/2 + u i))`` for odd K, with i = 1..K.
    """
    if k < 1:
        raise ConfigError(f"Code length must be positive, got {k}")
    if math.gcd(d, k) != 1:
        raise ConfigError(f"ZC root d={d} is not relatively prime to K={k}")
    i = np.arange(1, k + 1, dtype=float)
    if k % 2 == 0:
        phase = i ** 2 / 2 + u * i
    else:
        phase = i * (i + 1) / 2 + u * i
    return np.exp(-2j * np.pi * d / k * phase)


def cyclic_shift(base: np.ndarray, k: int) -> np.ndarray:
    """k-th cyclic shift: k=1 is the base, each further k shifts right once"""
    base = np.asarray(base, dtype=complex)
    if not 1 <= k <= base.size:
        raise ValidationError(f"Shift index {k} out of range 1..{base.size}")
    return np.roll(base, k - 1)


def psk_points(m: int) -> np.ndarray:
    """e^{j2πm/M} for m = 0..M-1"""
    return np.exp(2j * np.pi * np.arange(m) / m)


@dataclass(frozen=True)
class Codebook:
    """Spreading codes retained for modulation (rows), with their parameters"""
    codes: np.ndarray
    b: int
    d: int
    u: int
    rotation_enabled: bool = True

    @property
    def num_codes(self) -> int:
        return self.codes.shape[0]

    @property
    def length(self) -> int:
        return self.codes.shape[1]

    def __getitem__(self, index: int) -> np.ndarray:
        return self.codes[index]

    def full_difference_margin(self, m: int) -> float:
        """
        Smallest |c_i s - ĉ_i ŝ| over positions i and pairs (c, s) != (ĉ, ŝ)

        Returns inf when there is a single (code, symbol) pair. All entries
        lie on the unit circle, so per position the closest pair is adjacent
        in angle and the chord is 2 sin(gap/2).
        """
        spread = (self.codes[:, None, :] * psk_points(m)[None, :, None]).reshape(-1, self.length)
        if spread.shape[0] < 2:
            return float('inf')
        angles = np.sort(np.mod(np.angle(spread), 2 * np.pi), axis=0)
        gaps = np.diff(angles, axis=0)
        wrap = 2 * np.pi - (angles[-1] - angles[0])
        min_gap = min(float(gaps.min()), float(wrap.min()))
        return float(2 * np.sin(min_gap / 2))

    def max_cross_correlation(self) -> float:
        gram = self.codes.conj() @ self.codes.T
        np.fill_diagonal(gram, 0)
        return float(np.abs(gram).max()) if self.num_codes > 1 else 0.0

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for c, code in enumerate(self.codes):
            for i, value in enumerate(code, start=1):
                rows.append({'code': c, 'position': i, 're': value.real, 'im': value.imag})
        return pd.DataFrame(rows, columns=['code', 'position', 're', 'im'])


def build_codebook(config) -> Codebook:
    """
    Codes k = 1..2^p2: cyclic_shift(base, k) · e^{j2π(k-1)/B}, B = MK - 1

    Unit modulus, energy K and pairwise orthogonality are checked, and so is
    the full-difference property over the PSK alphabet. A violation of the
    latter raises with rotation on and is only logged in ablation mode.
    """
    k, m = config.k, config.m
    b = m * k - 1
    base = zc_base(k, config.zc_d, config.zc_u)

    codes = []
    for idx in range(1, 2 ** config.budget.p2 + 1):
        code = cyclic_shift(base, idx)
        if config.rotation_enabled:
            code = code * np.exp(2j * np.pi * (idx - 1) / b)
        codes.append(code)
    codebook = Codebook(np.array(codes), b, config.zc_d, config.zc_u, config.rotation_enabled)

    if np.abs(np.abs(codebook.codes) - 1).max() > UNIT_TOL:
        raise ConfigError("Spreading code entries are not unit modulus")
    if np.abs((np.abs(codebook.codes) ** 2).sum(axis=1) - k).max() > UNIT_TOL * k:
        raise ConfigError("Spreading code energy differs from K")
    if codebook.max_cross_correlation() > ORTHO_TOL:
        raise ConfigError(f"Spreading codes are not orthogonal (max |<ci,cj>| = "
                          f"{codebook.max_cross_correlation():.3e})")

    margin = codebook.full_difference_margin(m)
    if margin <= DIFF_TOL:
        message = (f"Full-difference property fails for K={k}, M={m}, d={config.zc_d}, "
                   f"u={config.zc_u} (margin {margin:.3e})")
        if config.rotation_enabled:
            raise ConfigError(message)
        logger.warning(f"{message}; rotation disabled, continuing")

    logger.debug(f"Codebook: {codebook.num_codes} codes, B={b}, margin={margin:.4f}")
    return codebook
