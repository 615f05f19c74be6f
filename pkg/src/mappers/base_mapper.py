# base_mapper.py - SI tuples, SI families and the mapper base class
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Sequence, Tuple
import itertools
import logging

import numpy as np

from ..utils.error_handler import ConfigError, InvalidSiSymbolError, ValidationError

logger = logging.getLogger(__name__)

SiTuple = Tuple[int, ...]


def check_si_tuple(indices: Sequence[int], n: int, k: Optional[int] = None) -> SiTuple:
    """Validate an ordered tuple of distinct 1-based subcarrier indices"""
    theta = tuple(int(a) for a in indices)
    if k is not None and len(theta) != k:
        raise ValidationError(f"SI tuple {theta} must have {k} indices")
    if len(set(theta)) != len(theta):
        raise ValidationError(f"SI tuple {theta} has duplicate indices")
    if any(a < 1 or a > n for a in theta):
        raise ValidationError(f"SI tuple {theta} has indices outside 1..{n}")
    return theta


def omega(theta_m: Sequence[int], theta_n: Sequence[int]) -> int:
    """Number of positions at which two SI tuples differ"""
    if len(theta_m) != len(theta_n):
        raise ValidationError(f"Length mismatch: {tuple(theta_m)} vs {tuple(theta_n)}")
    return sum(1 for a, b in zip(theta_m, theta_n) if a != b)


def all_index_sets(n: int, k: int) -> list:
    """All K-subsets of 1..N in lexicographic order, as ascending tuples"""
    return list(itertools.combinations(range(1, n + 1), k))


@dataclass(frozen=True)
class SiFamily:
    """Ordered list of SI tuples used by the mapper"""
    tuples: Tuple[SiTuple, ...]
    n: int
    kind: str = 'combinatorial'
    balanced: bool = True
    _set_index: Dict[FrozenSet[int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tuples = tuple(check_si_tuple(t, self.n) for t in self.tuples)
        if not tuples:
            raise ConfigError("SI family is empty")
        k = len(tuples[0])
        set_index = {}
        for i, theta in enumerate(tuples):
            if len(theta) != k:
                raise ValidationError(f"SI tuple {theta} has length {len(theta)}, expected {k}")
            key = frozenset(theta)
            if key in set_index:
                raise ValidationError(f"Index set {sorted(key)} appears twice in the family")
            set_index[key] = i
        object.__setattr__(self, 'tuples', tuples)
        object.__setattr__(self, '_set_index', set_index)

    def __len__(self) -> int:
        return len(self.tuples)

    def __getitem__(self, i: int) -> SiTuple:
        return self.tuples[i]

    def __iter__(self) -> Iterator[SiTuple]:
        return iter(self.tuples)

    @property
    def k(self) -> int:
        return len(self.tuples[0])

    def contains_set(self, index_set: Iterable[int]) -> bool:
        return frozenset(int(a) for a in index_set) in self._set_index

    def index_of_set(self, index_set: Iterable[int]) -> int:
        """Position of the tuple whose index set matches"""
        key = frozenset(int(a) for a in index_set)
        try:
            return self._set_index[key]
        except KeyError:
            raise InvalidSiSymbolError(key) from None

    @cached_property
    def positions(self) -> np.ndarray:
        """(len, K) array of zero-based subcarrier positions"""
        return np.array(self.tuples, dtype=np.int64) - 1

    @cached_property
    def mask_lookup(self) -> np.ndarray:
        """Table from subcarrier bitmask to family index (-1 when absent)"""
        table = np.full(1 << self.n, -1, dtype=np.int64)
        for key, i in self._set_index.items():
            table[sum(1 << (a - 1) for a in key)] = i
        return table

    def reordered(self, tuples: Sequence[SiTuple], kind: Optional[str] = None) -> 'SiFamily':
        return SiFamily(tuple(tuples), self.n, kind or self.kind, self.balanced)


def family_metrics(family: Sequence[SiTuple]) -> Tuple[int, int]:
    """
    κ and Γ of a family

    κ is the minimum Ω over ordered pairs m != n, Γ the sum of Ω over ordered pairs.
    """
    tuples = list(family)
    if len(tuples) < 2:
        raise ValidationError("family_metrics needs at least two tuples")
    values = [omega(a, b) for a, b in itertools.permutations(tuples, 2)]
    return min(values), sum(values)


class BaseMapper(ABC):
    """Base class for SI family constructions"""

    kind = 'base'

    def __init__(self, n: int, k: int, p1: int):
        if p1 < 0:
            raise ConfigError(f"p1 must be non-negative, got {p1}")
        self.n = n
        self.k = k
        self.p1 = p1

    @property
    def family_size(self) -> int:
        return 2 ** self.p1

    @abstractmethod
    def build(self) -> SiFamily:
        """
        Build the SI family

        Returns:
            SiFamily: exactly 2^p1 tuples
        """
        pass

    def _finish(self, tuples: Sequence[SiTuple], balanced: bool = True) -> SiFamily:
        family = SiFamily(tuple(tuples), self.n, self.kind, balanced)
        if len(family) != self.family_size:
            raise ConfigError(f"{self.kind} mapper produced {len(family)} tuples, expected {self.family_size}")
        if len(family) > 1:
            kappa, gamma = family_metrics(family)
            logger.info(f"Built {self.kind} SI family for (N,K)=({self.n},{self.k}): "
                        f"{len(family)} tuples, kappa={kappa}, Gamma={gamma}")
        return family
