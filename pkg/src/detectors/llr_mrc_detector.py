# llr_mrc_detector.py - LLR-based index detection followed by MRC over codes
import logging
from typing import Iterable

import numpy as np

from ..mappers.base_mapper import SiFamily, SiTuple
from ..utils.error_handler import ConfigError
from .base_detector import ABS2, CADD, CMUL, BaseDetector, BatchDetection

logger = logging.getLogger(__name__)

LLR_ALPHABETS = ('auto', 'psk', 'composite')

# Subcarrier bitmask tables are used up to this many subcarriers
MAX_MASK_TABLE_N = 20

# z = ĥ*y, slice, |ĥ|², Re(a* z), 2·Re - |ĥ|²
PSK_LLR_FLOPS = CMUL + 1 + ABS2 + 3 + 2


def llr_scores(y: np.ndarray, h: np.ndarray, alphabet: np.ndarray) -> np.ndarray:
    """λ_n = |y_n|² - min_a |y_n - h_n a|²; larger means more likely active"""
    y = np.asarray(y, dtype=complex)
    h = np.asarray(h, dtype=complex)
    residual = np.abs(y[..., None] - h[..., None] * np.asarray(alphabet)) ** 2
    return np.abs(y) ** 2 - residual.min(axis=-1)


def resolve_llr_alphabet(llr_alphabet: str, m: int) -> str:
    """
    'auto' picks 'psk' for M >= 4 and 'composite' for BPSK

    With M = 2 an active chip c_k[i]·s at ±j is as far from ±1 as from zero,
    so the PSK score of an active subcarrier can equal that of an idle one.
    """
    if llr_alphabet not in LLR_ALPHABETS:
        raise ConfigError(f"Unknown LLR alphabet '{llr_alphabet}', expected one of {LLR_ALPHABETS}")
    if llr_alphabet == 'auto':
        return 'composite' if m == 2 else 'psk'
    return llr_alphabet


def resolve_theta_order(theta_set: Iterable[int], family: SiFamily) -> SiTuple:
    """Family tuple with the given index set; raises InvalidSiSymbolError when absent"""
    return family[family.index_of_set(theta_set)]


class LlrMrcDetector(BaseDetector):
    """
    LLR-MRC detection

    Subcarriers are ranked by λ (descending, ties by subcarrier index) and the
    top K form θ̂. When that set is not in the family, α_K and α_{K+1} are
    swapped, then α_{K-1} and α_{K+2}, and so on (swaps accumulate), for at
    most min(K, N-K) swaps; after that family[0] is used. Code and symbol
    come from MRC on the resolved tuple.

    ``llr_alphabet='psk'`` scores against the M-PSK points by slicing ĥ*y;
    ``'composite'`` searches the products c_k[i]·x_m actually sent on an
    active subcarrier. ``'auto'`` (default) uses 'psk' unless M = 2.
    """

    kind = 'llr-mrc'

    def __init__(self, family, codebook, psk, llr_alphabet: str = 'auto'):
        super().__init__(family, codebook, psk)
        self.llr_alphabet = resolve_llr_alphabet(llr_alphabet, psk.m)
        if self.llr_alphabet == 'psk':
            self.alphabet = psk.points
        else:
            self.alphabet = np.unique((codebook.codes[:, :, None] * psk.points).ravel())
        self.replacement_count = 0
        self.swap_count = 0
        self._mask_index = {sum(1 << int(p) for p in row): i for i, row in enumerate(family.positions)}

    def llr(self, y: np.ndarray, h_hat: np.ndarray) -> np.ndarray:
        """λ for a (trials, N) block"""
        cells = y.size
        if self.llr_alphabet == 'psk':
            # |a| = 1: |y|² - |y - ĥa|² = 2 Re(a* ĥ* y) - |ĥ|², maximized by the nearest point
            z = np.conj(h_hat) * y
            a = self.psk.points[self.psk.quantize(z)]
            self.flop_counter.add('llr', cells * PSK_LLR_FLOPS)
            return 2 * np.real(np.conj(a) * z) - np.abs(h_hat) ** 2
        size = self.alphabet.size
        self.flop_counter.add('llr', cells * (ABS2 + size * (CMUL + CADD + ABS2) + (size - 1) + 1))
        return llr_scores(y, h_hat, self.alphabet)

    def _lookup(self, masks: np.ndarray) -> np.ndarray:
        if self.n <= MAX_MASK_TABLE_N:
            return self.family.mask_lookup[masks]
        return np.array([self._mask_index.get(int(m), -1) for m in masks], dtype=np.int64)

    def _replace(self, order: np.ndarray):
        order = list(order)
        k, n = self.k, self.n
        for j in range(1, min(k, n - k) + 1):
            order[k - j], order[k - 1 + j] = order[k - 1 + j], order[k - j]
            self.swap_count += 1
            self.flop_counter.note('swap')
            index = self._mask_index.get(sum(1 << int(p) for p in order[:k]), -1)
            if index >= 0:
                return index, False
        return 0, True

    def _detect_block(self, y, h_hat) -> BatchDetection:
        trials = y.shape[0]
        k = self.k
        lam = self.llr(y, h_hat)
        order = np.argsort(-lam, axis=1, kind='stable')
        masks = np.sum(np.left_shift(1, order[:, :k].astype(np.int64)), axis=1)
        si = self._lookup(masks)
        fallback = np.zeros(trials, dtype=bool)

        misses = np.flatnonzero(si < 0)
        self.replacement_count += misses.size
        for t in misses:
            si[t], fallback[t] = self._replace(order[t])
        if misses.size:
            logger.debug(f"LLR-MRC replacement on {misses.size}/{trials} trials, "
                         f"{int(fallback.sum())} fell back to the first tuple")

        positions = self.family.positions[si]
        y_i = np.take_along_axis(y, positions, axis=1)
        h_i = np.take_along_axis(h_hat, positions, axis=1)
        code, sym, delta = self._mrc_over_codes(y_i, h_i)
        # Reported metric only, not part of the decision
        outside = np.sum(np.abs(y) ** 2, axis=1) - np.sum(np.abs(y_i) ** 2, axis=1)
        return BatchDetection(si, code, sym, delta + np.maximum(outside, 0.0), fallback)
