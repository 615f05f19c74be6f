# near_ml_detector.py - Per-θ MRC symbol estimation with ML selection over θ
import logging

import numpy as np

from .base_detector import ABS2, BaseDetector, BatchDetection, dot_flops

logger = logging.getLogger(__name__)


class NearMlDetector(BaseDetector):
    """
    Near-ML detection

    For each θ_i the active entries (ĥ_i, y_i) are extracted, every code is
    tried with the MRC symbol estimate Q{(ĥ_i c_k)^H y_i / W_i}, the code with
    the smallest residual Δ_{i,k} is kept, and θ_i is scored by the full
    residual Θ_i = ‖y - Ĥ v_i ŝ_i‖². The smallest Θ_i wins; ties keep the
    lowest i and then the lowest k.
    """

    kind = 'near-ml'

    def theta_scores(self, y: np.ndarray, h_hat: np.ndarray):
        """(code, symbol, Θ) for every family tuple, each of shape (trials, 2^p1)"""
        positions = self.family.positions
        y_i = y[:, positions]
        h_i = h_hat[:, positions]
        code, sym, delta = self._mrc_over_codes(y_i, h_i)
        # Inactive subcarriers contribute |y_n|² to the full residual
        outside = np.sum(np.abs(y) ** 2, axis=1)[:, None] - np.sum(np.abs(y_i) ** 2, axis=2)

        trials, f = y.shape[0], len(self.family)
        self.flop_counter.add('theta_residual',
                              trials * (dot_flops(self.n, ABS2) + f * (dot_flops(self.k, ABS2) + 2)))
        return code, sym, delta + np.maximum(outside, 0.0)

    def _detect_block(self, y, h_hat) -> BatchDetection:
        trials = y.shape[0]
        code, sym, theta_score = self.theta_scores(y, h_hat)
        best = np.argmin(theta_score, axis=1)
        rows = np.arange(trials)
        return BatchDetection(best, code[rows, best], sym[rows, best], theta_score[rows, best],
                              np.zeros(trials, dtype=bool))
