# pairwise_error.py - PEP, pairwise error event census and BEP upper bound
import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.stats import norm

from ..mappers.base_mapper import SiFamily
from ..system.system_config import SystemConfig
from ..utils.error_handler import EnumerationLimitError, ValidationError
from ..waveform.modem import ClusterModem, ClusterSymbol
from ..waveform.spread_codes import Codebook

logger = logging.getLogger(__name__)

# β_n below BETA_TOL·K counts as zero
BETA_TOL = 1e-12

# Largest p for the exhaustive double enumeration
MAX_EXHAUSTIVE_BITS = 14

# Pair-block size (outer rows x hypotheses x N) per vectorized step
CHUNK_ELEMENTS = 1 << 21

DEFAULT_SAMPLES = 256


@dataclass(frozen=True)
class PeeRecord:
    """One pairwise error event x → x̂"""
    x: ClusterSymbol
    x_hat: ClusterSymbol
    beta: np.ndarray
    d: int
    w: int


@dataclass(frozen=True)
class DiversityReport:
    """
    Worst-case PEE census

    ``n_d_ordered`` counts ordered pairs (x → x̂) with d = G_d; ``n_d`` divides
    it by 2M, i.e. unordered pairs taken modulo a common PSK rotation.
    """
    g_d: int
    n_d: float
    n_d_ordered: int
    pairs_examined: int
    sampled: bool = False

    def to_dict(self) -> dict:
        return {'g_d': self.g_d, 'n_d': self.n_d, 'n_d_ordered': self.n_d_ordered,
                'pairs_examined': self.pairs_examined, 'sampled': self.sampled}


@dataclass(frozen=True)
class BoundEstimate:
    """BEP bound per SNR with a 95% half-width (zero when exhaustive)"""
    snr_linear: np.ndarray
    value: np.ndarray
    ci95: np.ndarray
    sampled: bool


def pep_unconditional(beta, snr_linear) -> Union[float, np.ndarray]:
    """
    (1/12) Π (1 + β_n γ̄/4)^{-1} + (1/4) Π (1 + β_n γ̄/3)^{-1}

    ``beta`` has N entries on its last axis; ``snr_linear`` may be an array,
    in which case its shape is prepended to the result.
    """
    beta = np.asarray(beta, dtype=float)
    if np.any(beta < 0):
        raise ValidationError("β values must be non-negative")
    snr = np.asarray(snr_linear, dtype=float)
    g = snr.reshape(snr.shape + (1,) * beta.ndim)
    out = (np.prod(1.0 / (1.0 + beta * g / 4.0), axis=-1) / 12.0
           + np.prod(1.0 / (1.0 + beta * g / 3.0), axis=-1) / 4.0)
    return float(out) if out.ndim == 0 else out


def _as_modem(config: SystemConfig, family: SiFamily, codebook: Codebook) -> ClusterModem:
    return ClusterModem(config, family, codebook)


def _symbol(modem: ClusterModem, index: int) -> ClusterSymbol:
    si, code, mary = (int(v) for v in modem.split_hypothesis(index))
    return ClusterSymbol(modem.family[si], code, mary, modem.hypotheses[index].copy())


def pee_record(modem: ClusterModem, index: int, index_hat: int) -> PeeRecord:
    """PEE between two hypothesis indices"""
    x, x_hat = modem.hypotheses[index], modem.hypotheses[index_hat]
    beta = np.abs(x - x_hat) ** 2
    d = int(np.count_nonzero(beta > BETA_TOL * modem.k))
    w = int(np.count_nonzero(modem.hypothesis_bits[index] != modem.hypothesis_bits[index_hat]))
    return PeeRecord(_symbol(modem, index), _symbol(modem, index_hat), beta, d, w)


def _outer_rows(modem: ClusterModem, sampled: bool, num_samples: int, seed: int) -> np.ndarray:
    total = modem.num_hypotheses
    if not sampled:
        if modem.budget.p > MAX_EXHAUSTIVE_BITS:
            raise EnumerationLimitError(
                f"2^{modem.budget.p} hypotheses exceed the exhaustive limit 2^{MAX_EXHAUSTIVE_BITS}; "
                f"use the sampled mode")
        return np.arange(total)
    rng = np.random.default_rng(seed)
    return rng.integers(0, total, size=num_samples)


def _pair_blocks(modem: ClusterModem, rows: np.ndarray):
    """Yield (row positions, hypothesis rows, β, d, w) for blocks of outer hypotheses against all others"""
    x = modem.hypotheses
    bits = modem.hypothesis_bits
    total = x.shape[0]
    step = max(1, CHUNK_ELEMENTS // (total * modem.n))
    for start in range(0, rows.size, step):
        block = rows[start:start + step]
        beta = np.abs(x[block, None, :] - x[None, :, :]) ** 2
        d = np.count_nonzero(beta > BETA_TOL * modem.k, axis=2)
        w = np.count_nonzero(bits[block, None, :] != bits[None, :, :], axis=2)
        yield np.arange(start, start + block.size), block, beta, d, w


def _census(modem: ClusterModem, rows: np.ndarray, sampled: bool) -> DiversityReport:
    g_d, count, examined = None, 0, 0
    for _, block, _, d, _ in _pair_blocks(modem, rows):
        d = d.copy()
        d[np.arange(block.size), block] = np.iinfo(np.int64).max
        examined += block.size * (modem.num_hypotheses - 1)
        block_min = int(d.min())
        if g_d is None or block_min < g_d:
            g_d, count = block_min, 0
        if block_min == g_d:
            count += int(np.count_nonzero(d == g_d))

    n_d = count / (2 * modem.config.m)
    if float(n_d).is_integer():
        n_d = int(n_d)
    return DiversityReport(g_d, n_d, count, examined, sampled)


def diversity_census(modem: ClusterModem, sampled: bool = False, num_samples: int = DEFAULT_SAMPLES,
                     seed: int = 0) -> DiversityReport:
    return _census(modem, _outer_rows(modem, sampled, num_samples, seed), sampled)


def enumerate_pees(config: SystemConfig, family: SiFamily, codebook: Codebook,
                   sampled: bool = False, num_samples: int = DEFAULT_SAMPLES, seed: int = 0) -> DiversityReport:
    """
    G_d and N_d over all ordered pairs x ≠ x̂

    The exhaustive regime is limited to p ≤ MAX_EXHAUSTIVE_BITS; ``sampled``
    replaces the outer loop by uniformly drawn transmit hypotheses.
    """
    report = diversity_census(_as_modem(config, family, codebook), sampled, num_samples, seed)
    logger.info(f"PEE census {config.label()}: G_d={report.g_d}, N_d={report.n_d} "
                f"(ordered {report.n_d_ordered}, {report.pairs_examined} pairs)")
    return report


def bep_bound_estimate(modem: ClusterModem, snr_linear, sampled: bool = False,
                       num_samples: int = DEFAULT_SAMPLES, seed: int = 0) -> BoundEstimate:
    """Σ_x Σ_x̂ PEP(x → x̂) w(x, x̂) / (2^p p), exhaustive or sampled over x"""
    snr = np.atleast_1d(np.asarray(snr_linear, dtype=float))
    rows = _outer_rows(modem, sampled, num_samples, seed)
    p = modem.budget.p
    per_row = np.zeros((snr.size, rows.size))
    for positions, block, beta, _, w in _pair_blocks(modem, rows):
        pep = pep_unconditional(beta, snr)
        pep[:, np.arange(block.size), block] = 0.0
        per_row[:, positions] = np.sum(pep * w, axis=2) / p

    value = per_row.mean(axis=1)
    if sampled and rows.size > 1:
        ci95 = norm.ppf(0.975) * per_row.std(axis=1, ddof=1) / np.sqrt(rows.size)
    else:
        ci95 = np.zeros_like(value)
    return BoundEstimate(snr, value, ci95, sampled)


def bep_upper_bound(config: SystemConfig, family: SiFamily, codebook: Codebook, snr_linear,
                    sampled: bool = False, num_samples: int = DEFAULT_SAMPLES, seed: int = 0):
    """BEP upper bound at one SNR (float) or an array of SNRs"""
    estimate = bep_bound_estimate(_as_modem(config, family, codebook), snr_linear, sampled, num_samples, seed)
    if np.ndim(snr_linear) == 0:
        return float(estimate.value[0])
    return estimate.value


def diversity_slope(modem: ClusterModem, snr_db_lo: float = 30.0, snr_db_hi: float = 40.0,
                    sampled: bool = False) -> float:
    """d log10(bound) / d log10(γ̄) between two SNRs; tends to -G_d"""
    snr = 10.0 ** (np.array([snr_db_lo, snr_db_hi]) / 10.0)
    value = bep_bound_estimate(modem, snr, sampled).value
    return float((np.log10(value[1]) - np.log10(value[0])) / ((snr_db_hi - snr_db_lo) / 10.0))
