# ml_detector.py - Exhaustive maximum-likelihood detection
import logging

import numpy as np

from ..waveform.modem import hypothesis_table
from .base_detector import ABS2, CMUL, BaseDetector, BatchDetection, dot_flops, residual_energy

logger = logging.getLogger(__name__)

# Upper bound on trials x hypotheses evaluated per matrix product
CHUNK_ELEMENTS = 1 << 22


class MlDetector(BaseDetector):
    """
    argmin over all 2^p hypotheses of ‖y - Ĥ v s‖²

    The metric is expanded as ‖y‖² - 2 Re<ĥ ⊙ x, y> + <|ĥ|², |x|²> so a
    block is scored with two matrix products. Ties go to the lowest
    enumeration index (θ-major, then code, then m).
    """

    kind = 'ml'

    def __init__(self, family, codebook, psk):
        super().__init__(family, codebook, psk)
        self.hypotheses = hypothesis_table(family, codebook, psk)
        self._energy = np.abs(self.hypotheses) ** 2
        self.num_codes = codebook.num_codes

    def metrics(self, y: np.ndarray, h_hat: np.ndarray) -> np.ndarray:
        """(trials, 2^p) metric matrix"""
        y, h_hat = self._check_block(y, h_hat)
        cross = (np.conj(y) * h_hat) @ self.hypotheses.T
        gain = (np.abs(h_hat) ** 2) @ self._energy.T
        out = np.sum(np.abs(y) ** 2, axis=1)[:, None] - 2 * cross.real + gain
        self._count(y.shape[0])
        return np.maximum(out, 0.0)

    def _count(self, trials: int):
        n, num_hyp = self.n, self.hypotheses.shape[0]
        self.flop_counter.add('energy', trials * (n * CMUL + n * ABS2 + dot_flops(n, ABS2)))
        self.flop_counter.add('correlate', trials * num_hyp * dot_flops(n, CMUL))
        self.flop_counter.add('gain', trials * num_hyp * dot_flops(n, 1))
        self.flop_counter.add('combine', trials * num_hyp * 3)

    def _detect_block(self, y, h_hat) -> BatchDetection:
        trials = y.shape[0]
        num_hyp = self.hypotheses.shape[0]
        step = max(1, CHUNK_ELEMENTS // num_hyp)
        best = np.empty(trials, dtype=np.int64)
        for start in range(0, trials, step):
            stop = min(start + step, trials)
            best[start:stop] = np.argmin(self.metrics(y[start:stop], h_hat[start:stop]), axis=1)

        mary = best % self.psk.m
        rest = best // self.psk.m
        # Reported metric only, not part of the decision
        metric = residual_energy(y, h_hat, self.hypotheses[best])
        return BatchDetection(rest // self.num_codes, rest % self.num_codes, mary, metric,
                              np.zeros(trials, dtype=bool))
