# link_builder.py - Assemble codebook, SI family and modem for one configuration
import logging
from dataclasses import dataclass
from functools import lru_cache

from ..analysis.pairwise_error import diversity_census
from ..mappers import build_family
from ..mappers.base_mapper import SiFamily
from ..system.system_config import SystemConfig
from ..waveform.modem import ClusterModem
from ..waveform.spread_codes import Codebook, build_codebook

logger = logging.getLogger(__name__)

# Family search is scored by the PEE census only up to this many bits
SCORER_MAX_BITS = 10


@dataclass(frozen=True)
class Link:
    config: SystemConfig
    codebook: Codebook
    family: SiFamily
    modem: ClusterModem


def diversity_scorer(config: SystemConfig, codebook: Codebook):
    """(G_d, -N_d) of a candidate family, or None when the census is too large"""
    if config.budget.p > SCORER_MAX_BITS:
        return None

    def score(family: SiFamily) -> tuple:
        report = diversity_census(ClusterModem(config, family, codebook))
        return report.g_d, -report.n_d_ordered

    return score


@lru_cache(maxsize=32)
def build_link(config: SystemConfig, use_scorer: bool = True) -> Link:
    codebook = build_codebook(config)
    scorer = diversity_scorer(config, codebook) if use_scorer else None
    family = build_family(config, scorer)
    modem = ClusterModem(config, family, codebook)
    logger.info(f"Link ready: {config.label()}, p={config.budget.p}, "
                f"{modem.num_hypotheses} hypotheses")
    return Link(config, codebook, family, modem)
