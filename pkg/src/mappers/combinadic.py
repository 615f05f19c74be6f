# combinadic.py - Combinatorial number system ranking and unranking of K-subsets
from math import comb
from typing import Sequence, Union

import numpy as np

from ..system.system_config import bits_to_int, floor_log2, int_to_bits
from ..utils.error_handler import InvalidSiSymbolError, ValidationError
from .base_mapper import SiTuple


def unrank_combination(j: int, n: int, k: int) -> SiTuple:
    """
    J-th K-subset of 1..N in the combinatorial number system

    J = C(c_K, K) + ... + C(c_1, 1) with c_K > ... > c_1 >= 0, found greedily
    from the top; the subset is {c_i + 1}, returned ascending.
    """
    if not 0 <= j < comb(n, k):
        raise ValidationError(f"Rank {j} out of range for C({n},{k})={comb(n, k)}")
    remaining = j
    chosen = []
    upper = n
    for kk in range(k, 0, -1):
        c = upper - 1
        while comb(c, kk) > remaining:
            c -= 1
        chosen.append(c + 1)
        remaining -= comb(c, kk)
        upper = c
    return tuple(sorted(chosen))


def rank_combination(theta: Sequence[int]) -> int:
    """Inverse of unrank_combination; intra-tuple order is ignored"""
    ordered = sorted(int(a) for a in theta)
    return sum(comb(a - 1, i) for i, a in enumerate(ordered, start=1))


def combinadic_encode(si_bits: Union[Sequence[int], int], n: int, k: int) -> SiTuple:
    """Map p1 SI bits (big-endian) to an ascending SI tuple"""
    p1 = floor_log2(comb(n, k))
    if isinstance(si_bits, (int, np.integer)):
        j = int(si_bits)
    else:
        if len(si_bits) != p1:
            raise ValidationError(f"Expected {p1} SI bits for (N,K)=({n},{k}), got {len(si_bits)}")
        j = bits_to_int(si_bits)
    if not 0 <= j < 2 ** p1:
        raise ValidationError(f"SI value {j} out of range [0, {2 ** p1})")
    return unrank_combination(j, n, k)


def combinadic_decode(theta: Sequence[int], n: int, k: int) -> np.ndarray:
    """Map an SI tuple back to its p1 bits"""
    p1 = floor_log2(comb(n, k))
    j = rank_combination(theta)
    if j >= 2 ** p1:
        raise InvalidSiSymbolError(theta, f"Index set {tuple(sorted(theta))} has rank {j}, "
                                          f"outside the {2 ** p1} used sets")
    return int_to_bits(j, p1)
