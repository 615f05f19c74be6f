# base_detector.py - Base Detector Class
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Optional
import logging

import numpy as np

from ..mappers.base_mapper import SiFamily, SiTuple
from ..utils.data_validator import DataValidator
from ..utils.error_handler import ValidationError
from ..waveform.modem import PskConstellation
from ..waveform.spread_codes import Codebook

logger = logging.getLogger(__name__)


@dataclass
class DetectionResult:
    """Estimated (θ, code, symbol) for one received cluster"""
    theta_hat: SiTuple
    code_index_hat: int
    mary_index_hat: int
    metric: float  # ‖y - Ĥ x̂‖² of the returned hypothesis
    si_index: Optional[int] = None
    fallback: bool = False

    def __post_init__(self):
        if np.isnan(self.metric) or self.metric < 0:
            raise ValidationError(f"Detection metric must be non-negative, got {self.metric}")
        self.theta_hat = tuple(int(a) for a in self.theta_hat)


@dataclass
class BatchDetection:
    """Detector output for a block of trials, as family/code/symbol indices"""
    si_index: np.ndarray
    code_index: np.ndarray
    mary_index: np.ndarray
    metric: np.ndarray
    fallback: np.ndarray

    def __len__(self) -> int:
        return self.si_index.size

    @property
    def num_fallbacks(self) -> int:
        return int(np.count_nonzero(self.fallback))

    def result(self, i: int, family: SiFamily) -> DetectionResult:
        si = int(self.si_index[i])
        return DetectionResult(family[si], int(self.code_index[i]), int(self.mary_index[i]),
                               float(self.metric[i]), si, bool(self.fallback[i]))


# Real flops per complex operation
CMUL = 6
CADD = 2
ABS2 = 3


def dot_flops(length: int, cost: int) -> int:
    """Flops of a length-L sum of products, each product costing ``cost``"""
    add = CADD if cost == CMUL else 1
    return length * cost + (length - 1) * add


class FlopCounter:
    """
    Real floating-point operation tally, by algorithm step

    Integer work (sorting, bitmask lookups, index swaps) is not a flop; it
    is tallied separately in ``events``.
    """

    def __init__(self):
        self.steps: Dict[str, float] = defaultdict(float)
        self.events: Dict[str, int] = defaultdict(int)
        self.trials = 0

    def add(self, step: str, count: float):
        self.steps[step] += count

    def note(self, event: str, count: int = 1):
        self.events[event] += count

    @property
    def total(self) -> float:
        return float(sum(self.steps.values()))

    def per_subcarrier(self, n: int) -> float:
        if self.trials == 0:
            return 0.0
        return self.total / (self.trials * n)

    def reset(self):
        self.steps.clear()
        self.events.clear()
        self.trials = 0


def residual_energy(y: np.ndarray, h_hat: np.ndarray, x: np.ndarray) -> np.ndarray:
    """‖y - ĥ ⊙ x‖² row by row"""
    return np.sum(np.abs(y - h_hat * x) ** 2, axis=-1)


class BaseDetector(ABC):
    """Base class for cluster detectors"""

    kind = 'base'

    def __init__(self, family: SiFamily, codebook: Codebook, psk: PskConstellation):
        if codebook.length != family.k:
            raise ValidationError(f"Code length {codebook.length} differs from K={family.k}")
        self.family = family
        self.codebook = codebook
        self.psk = psk
        self.n = family.n
        self.k = family.k
        self.flop_counter = FlopCounter()
        self.fallback_count = 0

    @classmethod
    def from_modem(cls, modem, **kwargs) -> 'BaseDetector':
        return cls(modem.family, modem.codebook, modem.psk, **kwargs)

    def _check_block(self, y: np.ndarray, h_hat: np.ndarray):
        y = np.atleast_2d(DataValidator.validate_complex_vector(y, self.n, "y"))
        h_hat = np.atleast_2d(DataValidator.validate_complex_vector(h_hat, self.n, "h_hat"))
        if y.shape != h_hat.shape or y.shape[1] != self.n:
            raise ValidationError(f"Expected y and h_hat of shape (trials, {self.n}), "
                                  f"got {y.shape} and {h_hat.shape}")
        return y, h_hat

    @abstractmethod
    def _detect_block(self, y: np.ndarray, h_hat: np.ndarray) -> BatchDetection:
        """
        Detect a block of received vectors

        Args:
            y: (trials, N) received vectors
            h_hat: (trials, N) channel estimates

        Returns:
            BatchDetection: one estimate per trial
        """
        pass

    def detect_batch(self, y: np.ndarray, h_hat: np.ndarray) -> BatchDetection:
        y, h_hat = self._check_block(y, h_hat)
        out = self._detect_block(y, h_hat)
        self.flop_counter.trials += y.shape[0]
        self.fallback_count += out.num_fallbacks
        return out

    def detect(self, y: np.ndarray, h_hat: np.ndarray) -> DetectionResult:
        return self.detect_batch(y, h_hat).result(0, self.family)

    def flops_per_subcarrier(self) -> float:
        return self.flop_counter.per_subcarrier(self.n)

    def _mrc_over_codes(self, y_i: np.ndarray, h_i: np.ndarray):
        """
        Per-code MRC symbol estimate and residual on the active subcarriers

        y_i, h_i have shape (..., K). Returns (best code, symbol index, Δ) with
        the lowest code index kept on ties; Δ is +inf when ‖h_i‖² = 0.
        """
        lead = int(np.prod(y_i.shape[:-1]))
        k, c = y_i.shape[-1], self.codebook.num_codes
        self.flop_counter.add('gain', lead * dot_flops(k, ABS2))
        self.flop_counter.add('code_channel', lead * c * k * CMUL)
        # correlate, normalize by W, slice
        self.flop_counter.add('mrc', lead * c * (dot_flops(k, CMUL) + 2 + 1))
        # ‖y_i - h_ik ŝ‖²
        self.flop_counter.add('code_residual', lead * c * (k * (CMUL + CADD) + dot_flops(k, ABS2)))

        w = np.sum(np.abs(h_i) ** 2, axis=-1)
        h_ik = h_i[..., None, :] * self.codebook.codes
        corr = np.sum(np.conj(h_ik) * y_i[..., None, :], axis=-1)
        dead = w == 0
        z = corr / np.where(dead, 1.0, w)[..., None]
        s_idx = self.psk.quantize(z)
        delta = np.sum(np.abs(y_i[..., None, :] - h_ik * self.psk.points[s_idx][..., None]) ** 2, axis=-1)
        delta = np.where(dead[..., None], np.inf, delta)
        best = np.argmin(delta, axis=-1)
        s_best = np.take_along_axis(s_idx, best[..., None], axis=-1)[..., 0]
        d_best = np.take_along_axis(delta, best[..., None], axis=-1)[..., 0]
        return best, s_best, d_best
