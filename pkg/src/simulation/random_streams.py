# random_streams.py - Counter-based random numbers for reproducible trials
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..waveform.channel import complex_normal

TRIALS_PER_BLOCK = 1000


def snr_key(snr_db: float) -> Tuple[int, int]:
    """Exact key of an SNR point: the two 32-bit words of its float64 pattern"""
    bits = int(np.array([float(snr_db) + 0.0], dtype=np.float64).view(np.uint64)[0])
    return bits >> 32, bits & 0xFFFFFFFF


def block_rng(seed: int, snr_db: float, block: int) -> np.random.Generator:
    """Philox generator keyed by (seed, SNR, block index)"""
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(*snr_key(snr_db), block))
    return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True)
class TrialDraw:
    """Random inputs of a block: bits (T, p) and unit-variance h, w, e (T, N)"""
    bits: np.ndarray
    h: np.ndarray
    w: np.ndarray
    e: np.ndarray

    def __len__(self) -> int:
        return self.bits.shape[0]

    def __getitem__(self, index) -> 'TrialDraw':
        sl = slice(index, index + 1) if isinstance(index, (int, np.integer)) else index
        return TrialDraw(self.bits[sl], self.h[sl], self.w[sl], self.e[sl])


def draw_block(seed: int, snr_db: float, block: int, p: int, n: int,
               trials: int = TRIALS_PER_BLOCK) -> TrialDraw:
    """Draw order is bits, h, noise, CSI error for every block"""
    rng = block_rng(seed, snr_db, block)
    bits = rng.integers(0, 2, size=(trials, p), dtype=np.uint8)
    h = complex_normal(rng, (trials, n))
    w = complex_normal(rng, (trials, n))
    e = complex_normal(rng, (trials, n))
    return TrialDraw(bits, h, w, e)


def draw_trial(seed: int, snr_db: float, trial_index: int, p: int, n: int) -> TrialDraw:
    """Replay a single trial: the block holding it is regenerated and sliced"""
    block, offset = divmod(trial_index, TRIALS_PER_BLOCK)
    return draw_block(seed, snr_db, block, p, n)[offset]
