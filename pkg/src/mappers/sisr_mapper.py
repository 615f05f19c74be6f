# sisr_mapper.py - Subcarrier index set reduction
import itertools
import logging
from math import comb
from typing import List, Optional

from ..system.system_config import floor_log2
from ..utils.error_handler import ConfigError
from .base_mapper import BaseMapper, SiFamily, SiTuple, all_index_sets, family_metrics
from .osi_mapper import FamilyScorer, _best_permutation, osi_reorder

logger = logging.getLogger(__name__)

# Exhaustive search over set subsets is used up to this many subsets
MAX_SISR_SUBSETS = 5000


def _score(family: SiFamily, scorer: Optional[FamilyScorer]) -> tuple:
    key = tuple(family_metrics(family))
    if scorer is not None:
        key += tuple(scorer(family))
    return key


def _greedy_selection(n: int, k: int, size: int) -> List[SiTuple]:
    sets = all_index_sets(n, k)
    placed = [sets[0]]
    remaining = sets[1:]
    while len(placed) < size:
        best_i, best_perm, best_key = None, None, None
        for i, s in enumerate(remaining):
            perm, key = _best_permutation(s, placed)
            if best_key is None or key > best_key:
                best_i, best_perm, best_key = i, perm, key
        placed.append(best_perm)
        remaining.pop(best_i)
    return placed


def sisr_family(n: int, k: int, p1_target: int, scorer: Optional[FamilyScorer] = None) -> SiFamily:
    """
    Reduced SI family of 2^p1_target tuples maximizing κ (then Γ)

    Small problems search every subset of index sets, each ordered by
    osi_reorder; larger ones grow the family greedily one set at a time.
    """
    if p1_target <= 0:
        raise ConfigError(f"SISR target p1 must be positive, got {p1_target}")
    full_p1 = floor_log2(comb(n, k))
    if p1_target >= full_p1:
        raise ConfigError(f"SISR target p1={p1_target} gives no reduction (floor(log2 C)={full_p1})")

    size = 2 ** p1_target
    sets = all_index_sets(n, k)
    if comb(len(sets), size) > MAX_SISR_SUBSETS:
        logger.info(f"SISR ({n},{k}) target p1={p1_target}: greedy selection")
        return SiFamily(tuple(_greedy_selection(n, k, size)), n, 'sisr')

    best, best_key = None, None
    for subset in itertools.combinations(sets, size):
        family = osi_reorder(SiFamily(subset, n, 'sisr'))
        key = _score(family, scorer)
        if best_key is None or key > best_key:
            best, best_key = family, key
    return best.reordered(best.tuples, 'sisr')


class SisrMapper(BaseMapper):
    """Fewer SI sets chosen for diversity; rate is made up with a larger M"""

    kind = 'sisr'

    def __init__(self, n: int, k: int, p1: int, scorer: Optional[FamilyScorer] = None):
        super().__init__(n, k, p1)
        self.scorer = scorer

    def build(self) -> SiFamily:
        family = sisr_family(self.n, self.k, self.p1, self.scorer)
        return self._finish(family.tuples)
