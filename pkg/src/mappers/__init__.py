# Mappers Module - SI family constructions
__version__ = "1.0.0"

from .base_mapper import BaseMapper, SiFamily, SiTuple, check_si_tuple, family_metrics, omega
from .combinadic import combinadic_decode, combinadic_encode, rank_combination, unrank_combination
from .combinatorial_mapper import CombinatorialMapper
from .osi_mapper import OsiMapper, build_equiprobable_family, osi_reorder
from .sisr_mapper import SisrMapper, sisr_family

MAPPERS = {
    'combinatorial': CombinatorialMapper,
    'osi': OsiMapper,
    'sisr': SisrMapper,
}


def build_family(config, scorer=None) -> SiFamily:
    """Build the SI family selected by config.mapper_kind"""
    mapper_cls = MAPPERS[config.mapper_kind]
    if mapper_cls is CombinatorialMapper:
        mapper = mapper_cls(config.n, config.k, config.budget.p1)
    else:
        mapper = mapper_cls(config.n, config.k, config.budget.p1, scorer=scorer)
    return mapper.build()


__all__ = [
    'BaseMapper',
    'SiFamily',
    'SiTuple',
    'check_si_tuple',
    'omega',
    'family_metrics',
    'combinadic_encode',
    'combinadic_decode',
    'rank_combination',
    'unrank_combination',
    'CombinatorialMapper',
    'OsiMapper',
    'SisrMapper',
    'build_equiprobable_family',
    'osi_reorder',
    'sisr_family',
    'build_family',
    'MAPPERS',
]
