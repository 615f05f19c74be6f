# modem.py - PSK mapping, precoding and the cluster encoder/decoder
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

import numpy as np

from ..mappers.base_mapper import SiFamily, SiTuple, check_si_tuple
from ..system.system_config import (
    SystemConfig,
    bit_matrix_to_int,
    bits_to_int,
    int_to_bit_matrix,
    int_to_bits,
    join_bits,
    split_bits,
)
from ..utils.data_validator import DataValidator
from ..utils.error_handler import ValidationError
from .spread_codes import Codebook, psk_points

logger = logging.getLogger(__name__)


def gray_encode(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    return m ^ (m >> 1)


def gray_decode(g: np.ndarray) -> np.ndarray:
    g = np.asarray(g, dtype=np.int64)
    m = g.copy()
    shift = g >> 1
    while np.any(shift):
        m ^= shift
        shift >>= 1
    return m


@dataclass(frozen=True)
class PskSymbol:
    """Unit-modulus M-PSK point e^{j2πm/M}"""
    value: complex
    index: int


class PskConstellation:
    """Gray-labelled M-PSK alphabet with a nearest-point quantizer"""

    def __init__(self, m: int):
        self.m = m
        self.bits_per_symbol = int(np.log2(m))
        self.points = psk_points(m)
        self.labels = gray_encode(np.arange(m))

    def index_from_bits(self, bits: Sequence[int]) -> int:
        arr = DataValidator.validate_bits(bits, self.bits_per_symbol)
        return int(gray_decode(bits_to_int(arr)))

    def bits_from_index(self, index: int) -> np.ndarray:
        return int_to_bits(int(self.labels[index]), self.bits_per_symbol)

    def quantize(self, z) -> np.ndarray:
        """Q{z}: index of the nearest PSK point (zero maps to index 0)"""
        angle = np.angle(np.asarray(z))
        return np.mod(np.rint(angle * self.m / (2 * np.pi)), self.m).astype(np.int64)


def psk_modulate(mary_bits: Sequence[int], m: int) -> PskSymbol:
    """Gray bits -> m -> e^{j2πm/M}"""
    psk = PskConstellation(m)
    index = psk.index_from_bits(mary_bits)
    return PskSymbol(complex(psk.points[index]), index)


def precode(theta: Sequence[int], code: np.ndarray, n: int) -> np.ndarray:
    """v[α_k] = c_k for each position k of θ, zero elsewhere"""
    code = np.asarray(code, dtype=complex)
    theta = check_si_tuple(theta, n, code.size)
    v = np.zeros(n, dtype=complex)
    v[np.array(theta) - 1] = code
    return v


def transmit_vectors(family: SiFamily, codebook: Codebook, psk: PskConstellation,
                     si_index, code_index, mary_index) -> np.ndarray:
    """Rows x = precode(θ_i, c_k) · s_m for index arrays (i, k, m)"""
    si, code, mary = (np.atleast_1d(np.asarray(a, dtype=np.int64)) for a in (si_index, code_index, mary_index))
    x = np.zeros((si.size, family.n), dtype=complex)
    rows = np.arange(si.size)[:, None]
    x[rows, family.positions[si]] = codebook.codes[code] * psk.points[mary][:, None]
    return x


def hypothesis_table(family: SiFamily, codebook: Codebook, psk: PskConstellation) -> np.ndarray:
    """All transmit vectors, θ-major, then code, then m"""
    total = len(family) * codebook.num_codes * psk.m
    index = np.arange(total)
    rest = index // psk.m
    return transmit_vectors(family, codebook, psk, rest // codebook.num_codes,
                            rest % codebook.num_codes, index % psk.m)


@dataclass(frozen=True)
class ClusterSymbol:
    """Transmit hypothesis (θ, code, s) and x = v s"""
    theta: SiTuple
    code_index: int
    mary_index: int
    x: np.ndarray

    def __post_init__(self):
        support = np.flatnonzero(np.abs(self.x) > 1e-12)
        if sorted(int(i) + 1 for i in support) != sorted(self.theta):
            raise ValidationError(f"x support {support + 1} does not match θ={self.theta}")
        if abs(float(np.vdot(self.x, self.x).real) - len(self.theta)) > 1e-12:
            raise ValidationError("‖x‖² differs from K")


class ClusterModem:
    """Bits <-> (θ, code, symbol) <-> x for one cluster"""

    def __init__(self, config: SystemConfig, family: SiFamily, codebook: Codebook):
        budget = config.budget
        if len(family) != 2 ** budget.p1:
            raise ValidationError(f"Family has {len(family)} tuples, bit budget needs {2 ** budget.p1}")
        if codebook.num_codes != 2 ** budget.p2:
            raise ValidationError(f"Codebook has {codebook.num_codes} codes, bit budget needs {2 ** budget.p2}")
        self.config = config
        self.budget = budget
        self.family = family
        self.codebook = codebook
        self.psk = PskConstellation(config.m)
        self.n = config.n
        self.k = config.k

    @property
    def num_hypotheses(self) -> int:
        return len(self.family) * self.codebook.num_codes * self.config.m

    def hypothesis_index(self, si_index, code_index, mary_index):
        """Enumeration index: θ-major, then code, then m"""
        return (np.asarray(si_index) * self.codebook.num_codes + np.asarray(code_index)) * self.config.m \
            + np.asarray(mary_index)

    def split_hypothesis(self, index) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        index = np.asarray(index, dtype=np.int64)
        mary = index % self.config.m
        rest = index // self.config.m
        return rest // self.codebook.num_codes, rest % self.codebook.num_codes, mary

    @cached_property
    def hypotheses(self) -> np.ndarray:
        """(2^p, N) matrix of every transmit vector in enumeration order"""
        return hypothesis_table(self.family, self.codebook, self.psk)

    @cached_property
    def hypothesis_bits(self) -> np.ndarray:
        """(2^p, p) bit labels aligned with ``hypotheses``"""
        si, code, mary = self.split_hypothesis(np.arange(self.num_hypotheses))
        return self.decode_batch(si, code, mary)

    def _vectors(self, si, code, mary) -> np.ndarray:
        return transmit_vectors(self.family, self.codebook, self.psk, si, code, mary)

    def encode(self, bits: Sequence[int]) -> ClusterSymbol:
        """Split bits, map θ, code and symbol, and form x = precode(θ, c) · s"""
        si_bits, code_bits, mary_bits = split_bits(bits, self.budget)
        si_index = bits_to_int(si_bits)
        code_index = bits_to_int(code_bits)
        symbol = psk_modulate(mary_bits, self.config.m)
        theta = self.family[si_index]
        x = precode(theta, self.codebook[code_index], self.n) * symbol.value
        return ClusterSymbol(theta, code_index, symbol.index, x)

    def decode(self, theta: Sequence[int], code_index: int, mary_index: int) -> np.ndarray:
        """Bits for a detected (θ, code, m); θ is matched by index set"""
        si_index = self.family.index_of_set(theta)
        return join_bits(int_to_bits(si_index, self.budget.p1),
                         int_to_bits(int(code_index), self.budget.p2),
                         self.psk.bits_from_index(int(mary_index)))

    def encode_batch(self, bits: np.ndarray):
        """
        Vectorized encoder

        Returns (si_index, code_index, mary_index, x) for a (trials, p) bit matrix.
        """
        bits = DataValidator.validate_bit_matrix(bits, self.budget.p)
        b = self.budget
        si = bit_matrix_to_int(bits[:, :b.p1])
        code = bit_matrix_to_int(bits[:, b.p1:b.p1 + b.p2])
        mary = gray_decode(bit_matrix_to_int(bits[:, b.p1 + b.p2:]))
        return si, code, mary, self._vectors(si, code, mary)

    def decode_batch(self, si_index, code_index, mary_index) -> np.ndarray:
        """Vectorized inverse of encode_batch for in-family indices"""
        b = self.budget
        return np.concatenate([
            int_to_bit_matrix(si_index, b.p1),
            int_to_bit_matrix(code_index, b.p2),
            int_to_bit_matrix(self.psk.labels[np.asarray(mary_index, dtype=np.int64)], b.p3),
        ], axis=1)


def encode(bits: Sequence[int], modem: ClusterModem) -> ClusterSymbol:
    return modem.encode(bits)


def decode(theta: Sequence[int], code_index: int, mary_index: int, modem: ClusterModem) -> np.ndarray:
    return modem.decode(theta, code_index, mary_index)
