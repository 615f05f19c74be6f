# osi_mapper.py - Equiprobable step-1 selection and ordering of subcarrier indices
import itertools
import logging
from math import comb
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.error_handler import ConfigError
from .base_mapper import BaseMapper, SiFamily, SiTuple, all_index_sets, family_metrics, omega

logger = logging.getLogger(__name__)

# Exhaustive step-1 search is used when C(C(N,K), T) is at most this
MAX_STEP1_CANDIDATES = 32

FamilyScorer = Callable[[SiFamily], Tuple]


def _occurrences(sets: Sequence[SiTuple], n: int) -> np.ndarray:
    counts = np.zeros(n, dtype=np.int64)
    for s in sets:
        for a in s:
            counts[a - 1] += 1
    return counts


def _is_balanced(sets: Sequence[SiTuple], n: int) -> bool:
    counts = _occurrences(sets, n)
    return int(counts.max() - counts.min()) <= 1


def build_equiprobable_family(n: int, k: int, p1: int) -> SiFamily:
    """
    Step 1: keep 2^p1 index sets with (near) equal index occurrence

    The complement I_2 of T = C(N,K) - 2^p1 sets is removed greedily, each pick
    minimizing the largest occurrence count inside I_2 and then the sum of
    squared counts; ties go to the first set in lexicographic order. The
    result is flagged unbalanced when the spread exceeds one.
    """
    total = comb(n, k)
    size = 2 ** p1
    if size > total:
        raise ConfigError(f"2^p1={size} exceeds C({n},{k})={total}")

    sets = all_index_sets(n, k)
    removed: List[SiTuple] = []
    counts = np.zeros(n, dtype=np.int64)
    for _ in range(total - size):
        best, best_key = None, None
        for s in sets:
            if s in removed:
                continue
            trial = counts.copy()
            trial[[a - 1 for a in s]] += 1
            key = (int(trial.max()), int((trial ** 2).sum()))
            if best_key is None or key < best_key:
                best, best_key = s, key
        removed.append(best)
        counts[[a - 1 for a in best]] += 1

    kept = [s for s in sets if s not in removed]
    balanced = _is_balanced(kept, n)
    if not balanced:
        logger.warning(f"Step-1 family for (N,K,p1)=({n},{k},{p1}) is not balanced")
    logger.debug(f"Step-1 removed {removed}")
    return SiFamily(tuple(kept), n, 'osi', balanced)


def _best_permutation(theta: SiTuple, placed: Sequence[SiTuple]) -> Tuple[SiTuple, Tuple[int, int]]:
    best, best_key = None, None
    for perm in itertools.permutations(theta):
        distances = [omega(perm, prev) for prev in placed]
        key = (min(distances), sum(distances))
        if best_key is None or key > best_key:
            best, best_key = perm, key
    return best, best_key


def osi_reorder(family: SiFamily) -> SiFamily:
    """
    Step 2: reorder indices inside each tuple

    θ_1 is kept; every later tuple takes the permutation maximizing the minimum
    Ω to the tuples already placed, then the sum of those Ω; remaining ties go
    to the first permutation in lexicographic enumeration.
    """
    tuples = list(family)
    if len(tuples) < 2:
        return family.reordered(tuples, 'osi')

    placed = [tuples[0]]
    for theta in tuples[1:]:
        perm, _ = _best_permutation(theta, placed)
        placed.append(perm)
    return family.reordered(placed, 'osi')


class OsiMapper(BaseMapper):
    """Balanced step-1 selection followed by index ordering"""

    kind = 'osi'

    def __init__(self, n: int, k: int, p1: int, scorer: Optional[FamilyScorer] = None):
        super().__init__(n, k, p1)
        self.scorer = scorer

    def _candidate_complements(self) -> Optional[List[SiFamily]]:
        sets = all_index_sets(self.n, self.k)
        removals = len(sets) - self.family_size
        if comb(len(sets), removals) > MAX_STEP1_CANDIDATES:
            return None
        candidates = []
        for removed in itertools.combinations(range(len(sets)), removals):
            kept = [s for i, s in enumerate(sets) if i not in removed]
            if _is_balanced(kept, self.n):
                candidates.append(SiFamily(tuple(kept), self.n, 'osi', True))
        return candidates or None

    def _score(self, family: SiFamily) -> Tuple:
        key = family_metrics(family) if len(family) > 1 else (self.k, 0)
        if self.scorer is not None:
            key = tuple(key) + tuple(self.scorer(family))
        return key

    def build(self) -> SiFamily:
        candidates = self._candidate_complements()
        if candidates is None:
            family = osi_reorder(build_equiprobable_family(self.n, self.k, self.p1))
            return self._finish(family.tuples, family.balanced)

        best, best_key = None, None
        for step1 in candidates:
            family = osi_reorder(step1)
            key = self._score(family)
            if best_key is None or key > best_key:
                best, best_key = family, key
        logger.debug(f"OSI searched {len(candidates)} balanced step-1 families, best score {best_key}")
        return self._finish(best.tuples, True)
