# ber_statistics.py - BER accounting, confidence intervals and CSV output
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, List, Tuple, Union

import numpy as np
import pandas as pd
from scipy.stats import norm

from ..utils.error_handler import OutputError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['snr_db', 'detector', 'mapper', 'n', 'k', 'm', 'csi',
               'bits_sent', 'bit_errors', 'ber', 'ci95']


def wilson_interval(errors: int, total: int, confidence: float = 0.95) -> Tuple[float, float]:
    """Wilson score interval for an error proportion"""
    if total <= 0:
        return 0.0, 1.0
    z = norm.ppf(0.5 + confidence / 2)
    p_hat = errors / total
    denom = 1.0 + z ** 2 / total
    center = (p_hat + z ** 2 / (2 * total)) / denom
    half = z * np.sqrt(p_hat * (1 - p_hat) / total + z ** 2 / (4 * total ** 2)) / denom
    return float(max(0.0, center - half)), float(min(1.0, center + half))


@dataclass
class BlockCounts:
    """Error tallies of one block of trials"""
    trials: int = 0
    bits_sent: int = 0
    bit_errors: int = 0
    si_symbol_errors: int = 0
    code_symbol_errors: int = 0
    mary_symbol_errors: int = 0
    fallbacks: int = 0

    def __add__(self, other: 'BlockCounts') -> 'BlockCounts':
        return BlockCounts(*(a + b for a, b in zip(asdict(self).values(), asdict(other).values())))


@dataclass
class BerStats:
    """Statistics of one SNR point"""
    snr_db: float
    detector: str
    mapper: str
    n: int
    k: int
    m: int
    csi: str
    counts: BlockCounts = field(default_factory=BlockCounts)
    ebn0_db: float = float('nan')

    @property
    def bits_sent(self) -> int:
        return self.counts.bits_sent

    @property
    def bit_errors(self) -> int:
        return self.counts.bit_errors

    @property
    def trials(self) -> int:
        return self.counts.trials

    @property
    def si_symbol_errors(self) -> int:
        return self.counts.si_symbol_errors

    @property
    def code_symbol_errors(self) -> int:
        return self.counts.code_symbol_errors

    @property
    def mary_symbol_errors(self) -> int:
        return self.counts.mary_symbol_errors

    @property
    def fallbacks(self) -> int:
        return self.counts.fallbacks

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_sent if self.bits_sent else 0.0

    @property
    def ci95(self) -> float:
        """Half-width of the 95% Wilson interval"""
        if not self.bits_sent:
            return 0.0
        lo, hi = wilson_interval(self.bit_errors, self.bits_sent)
        return (hi - lo) / 2

    def to_row(self, include_ebn0: bool = False) -> dict:
        row = {
            'snr_db': float(self.snr_db),
            'detector': self.detector,
            'mapper': self.mapper,
            'n': self.n,
            'k': self.k,
            'm': self.m,
            'csi': self.csi,
            'bits_sent': self.bits_sent,
            'bit_errors': self.bit_errors,
            'ber': self.ber,
            'ci95': self.ci95,
        }
        if include_ebn0:
            row['ebn0_db'] = float(self.ebn0_db)
        return row

    def summary(self) -> dict:
        return {**self.to_row(include_ebn0=True),
                'trials': self.trials,
                'si_symbol_errors': self.si_symbol_errors,
                'code_symbol_errors': self.code_symbol_errors,
                'mary_symbol_errors': self.mary_symbol_errors,
                'fallbacks': self.fallbacks}


def stats_frame(stats: Iterable[BerStats], include_ebn0: bool = False) -> pd.DataFrame:
    columns = CSV_COLUMNS + (['ebn0_db'] if include_ebn0 else [])
    return pd.DataFrame([s.to_row(include_ebn0) for s in stats], columns=columns)


def emit_csv(stats: Union[Iterable[BerStats], pd.DataFrame], path: Union[str, Path],
             include_ebn0: bool = False) -> Path:
    """Write one row per SNR point; UTF-8, LF line endings, round-trip float precision"""
    frame = stats if isinstance(stats, pd.DataFrame) else stats_frame(stats, include_ebn0)
    path = Path(path)
    try:
        frame.to_csv(path, index=False, lineterminator='\n', encoding='utf-8')
    except OSError as e:
        raise OutputError(f"Cannot write results to {path}: {e}") from e
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


@dataclass
class SweepResult:
    points: List[BerStats]

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def to_frame(self, detailed: bool = True) -> pd.DataFrame:
        if detailed:
            return pd.DataFrame([p.summary() for p in self.points])
        return stats_frame(self.points)
