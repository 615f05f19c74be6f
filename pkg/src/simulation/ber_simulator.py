# ber_simulator.py - Monte Carlo BER sweeps
import logging
import math
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import List, Optional, Sequence

import numpy as np

from ..detectors import DETECTORS, LLR_ALPHABETS, BaseDetector, create_detector
from ..system.system_config import SystemConfig
from ..utils.data_validator import DataValidator
from ..utils.error_handler import ConfigError
from ..utils.logger import get_simulation_logger
from ..waveform.channel import CSI_MODES, observe, snr_db_to_n0
from .ber_statistics import BerStats, BlockCounts, SweepResult
from .link_builder import Link, build_link
from .random_streams import TRIALS_PER_BLOCK, draw_block

logger = logging.getLogger(__name__)

DEFAULT_MIN_ERRORS = 200
DEFAULT_MAX_BITS = 10 ** 7
PUBLISHABLE_MIN_ERRORS = 100


@dataclass
class SweepConfig:
    """One BER curve: system, detector, SNR grid and stop rule"""
    system: SystemConfig
    detector_kind: str = 'ml'
    snr_db_list: Sequence[float] = field(default_factory=lambda: [0.0])
    min_bit_errors: int = DEFAULT_MIN_ERRORS
    max_bits: int = DEFAULT_MAX_BITS
    master_seed: int = 0
    csi_mode: str = 'perfect'
    workers: int = 1
    llr_alphabet: str = 'auto'
    noiseless: bool = False

    def __post_init__(self):
        self.snr_db_list = DataValidator.validate_snr_list(self.snr_db_list)
        if self.detector_kind not in DETECTORS:
            raise ConfigError(f"Unknown detector '{self.detector_kind}', expected one of {sorted(DETECTORS)}")
        if self.csi_mode not in CSI_MODES:
            raise ConfigError(f"Unknown CSI mode '{self.csi_mode}', expected one of {CSI_MODES}")
        if self.llr_alphabet not in LLR_ALPHABETS:
            raise ConfigError(f"Unknown LLR alphabet '{self.llr_alphabet}'")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if self.master_seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.master_seed}")
        if self.min_bit_errors < 1 or self.max_bits < 1:
            raise ConfigError("min_bit_errors and max_bits must be positive")
        if self.min_bit_errors < PUBLISHABLE_MIN_ERRORS:
            logger.warning(f"min_bit_errors={self.min_bit_errors} is below {PUBLISHABLE_MIN_ERRORS}; "
                           f"points are not publishable")

    def n0(self, snr_db: float) -> float:
        return 0.0 if self.noiseless else snr_db_to_n0(snr_db)


def ebn0_db(snr_db: float, config: SystemConfig) -> float:
    """Eb/N0 = γ̄ K / p (energy K per cluster carrying p bits)"""
    return snr_db + 10.0 * math.log10(config.k / config.budget.p)


def simulate_block(link: Link, detector: BaseDetector, seed: int, snr_db: float, block: int,
                   n0: float, csi_mode: str, trials: int = TRIALS_PER_BLOCK) -> BlockCounts:
    """encode -> channel -> detect -> decode for one block of trials"""
    modem = link.modem
    draw = draw_block(seed, snr_db, block, modem.budget.p, modem.n, trials)
    si, code, mary, x = modem.encode_batch(draw.bits)
    y, realization = observe(x, draw.h, draw.w, draw.e, n0, csi_mode)
    out = detector.detect_batch(y, realization.h_hat)
    rx_bits = modem.decode_batch(out.si_index, out.code_index, out.mary_index)
    return BlockCounts(
        trials=trials,
        bits_sent=int(draw.bits.size),
        bit_errors=int(np.count_nonzero(rx_bits != draw.bits)),
        si_symbol_errors=int(np.count_nonzero(out.si_index != si)),
        code_symbol_errors=int(np.count_nonzero(out.code_index != code)),
        mary_symbol_errors=int(np.count_nonzero(out.mary_index != mary)),
        fallbacks=out.num_fallbacks,
    )


_DETECTORS = {}


def _worker_detector(config: SystemConfig, kind: str, llr_alphabet: str):
    key = (config, kind, llr_alphabet)
    if key not in _DETECTORS:
        link = build_link(config)
        kwargs = {'llr_alphabet': llr_alphabet} if kind == 'llr-mrc' else {}
        _DETECTORS[key] = (link, create_detector(kind, link.modem, **kwargs))
    return _DETECTORS[key]


def _run_block(task) -> BlockCounts:
    config, kind, llr_alphabet, seed, snr_db, block, n0, csi_mode = task
    link, detector = _worker_detector(config, kind, llr_alphabet)
    return simulate_block(link, detector, seed, snr_db, block, n0, csi_mode)


class BerSimulator:
    """Runs a sweep block by block; results do not depend on the worker count"""

    def __init__(self, sweep: SweepConfig, run_name: Optional[str] = None, log_to_file: bool = False):
        self.sweep = sweep
        self.config = sweep.system
        self.sim_logger = get_simulation_logger(run_name or self.config.mapper_kind, log_to_file)

    def _stop(self, counts: BlockCounts) -> bool:
        return counts.bit_errors >= self.sweep.min_bit_errors or counts.bits_sent >= self.sweep.max_bits

    def _run_point(self, snr_db: float, pool) -> BerStats:
        sweep = self.sweep
        n0 = sweep.n0(snr_db)
        counts = BlockCounts()
        block = 0
        wave = sweep.workers
        while not self._stop(counts):
            tasks = [(self.config, sweep.detector_kind, sweep.llr_alphabet, sweep.master_seed,
                      snr_db, b, n0, sweep.csi_mode) for b in range(block, block + wave)]
            results = pool.map(_run_block, tasks) if pool is not None else [_run_block(t) for t in tasks]
            for result in results:
                counts = counts + result
                block += 1
                if self._stop(counts):
                    break

        c = self.config
        stats = BerStats(snr_db, sweep.detector_kind, c.mapper_kind, c.n, c.k, c.m, sweep.csi_mode,
                         counts, ebn0_db(snr_db, c))
        self.sim_logger.sweep_point(snr_db, stats.bits_sent, stats.bit_errors, stats.ber,
                                    stats.ci95, sweep.detector_kind)
        if stats.fallbacks:
            logger.debug(f"{stats.fallbacks} LLR-MRC fallbacks at {snr_db} dB")
        return stats

    def run(self) -> SweepResult:
        sweep = self.sweep
        self.sim_logger.status("Sweep started", {
            'system': self.config.label(),
            'detector': sweep.detector_kind,
            'csi': sweep.csi_mode,
            'points': len(sweep.snr_db_list),
            'workers': sweep.workers,
        })
        start = time.perf_counter()
        pool = Pool(sweep.workers) if sweep.workers > 1 else None
        try:
            points: List[BerStats] = [self._run_point(snr, pool) for snr in sweep.snr_db_list]
        finally:
            if pool is not None:
                pool.close()
                pool.join()

        elapsed = time.perf_counter() - start
        trials = sum(p.trials for p in points)
        self.sim_logger.performance({'elapsed_s': elapsed, 'trials': trials,
                                     'trials_per_s': trials / elapsed if elapsed > 0 else float('inf')})
        self.sim_logger.status("Sweep completed")
        return SweepResult(points)


def run_sweep(sweep: SweepConfig) -> List[BerStats]:
    return BerSimulator(sweep).run().points
