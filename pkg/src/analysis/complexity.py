# complexity.py - Closed-form detector complexity (real flops per subcarrier)
import logging
from typing import Iterable, List, Optional

import pandas as pd

from ..system.system_config import SystemConfig
from ..utils.error_handler import ConfigError

logger = logging.getLogger(__name__)

DETECTOR_KINDS = ('ml', 'near-ml', 'llr-mrc')


def flops(detector_kind: str, config: SystemConfig) -> float:
    """
    Flops per subcarrier

    ML:      2^{p1+p2} (4N + 14K) M / N
    near-ML: 2^{p1} [(26·2^{p2} + 18) K + 4N] / N
    LLR-MRC: (2^{p2}·26K + 4K) / N + 15
    """
    n, k, m = config.n, config.k, config.m
    p1, p2 = config.budget.p1, config.budget.p2
    if detector_kind == 'ml':
        return 2 ** (p1 + p2) * (4 * n + 14 * k) * m / n
    if detector_kind == 'near-ml':
        return 2 ** p1 * ((26 * 2 ** p2 + 18) * k + 4 * n) / n
    if detector_kind == 'llr-mrc':
        return (2 ** p2 * 26 * k + 4 * k) / n + 15
    raise ConfigError(f"Unknown detector '{detector_kind}', expected one of {DETECTOR_KINDS}")


def complexity_grid() -> List[SystemConfig]:
    """(5,4) over M = 2..128 and (8,K,16) over K = 2..7"""
    configs = [SystemConfig(5, 4, 2 ** e) for e in range(1, 8)]
    configs += [SystemConfig(8, k, 16) for k in range(2, 8)]
    return configs


def flops_sweep(detector_kinds: Iterable[str] = DETECTOR_KINDS,
                configs: Optional[Iterable[SystemConfig]] = None) -> pd.DataFrame:
    """Flops table with the saving of each detector relative to ML"""
    configs = list(configs) if configs is not None else complexity_grid()
    kinds = list(detector_kinds)
    rows = []
    for config in configs:
        ml = flops('ml', config)
        for kind in kinds:
            value = flops(kind, config)
            rows.append({
                'detector': kind,
                'n': config.n,
                'k': config.k,
                'm': config.m,
                'mapper': config.mapper_kind,
                'flops': value,
                'saving_vs_ml': 1.0 - value / ml,
            })
    logger.debug(f"Complexity table: {len(rows)} rows")
    return pd.DataFrame(rows, columns=['detector', 'n', 'k', 'm', 'mapper', 'flops', 'saving_vs_ml'])
