# system_config.py - System parameters, bit budget and bit-stream plumbing
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.special import comb

from ..utils.data_validator import DataValidator
from ..utils.error_handler import ConfigError

logger = logging.getLogger(__name__)

MAPPER_KINDS = ('combinatorial', 'sisr', 'osi')
MAPPER_ALIASES = {'comb': 'combinatorial'}


def _optional_int(value: Any) -> Optional[int]:
    return None if value is None else int(value)


def _is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


def floor_log2(value: int) -> int:
    """floor(log2(value)) for a positive integer, exact"""
    if value < 1:
        raise ConfigError(f"log2 undefined for {value}")
    return int(value).bit_length() - 1


@dataclass(frozen=True)
class BitBudget:
    """Bits per cluster carried by SI, code index and M-ary symbol"""
    p1: int
    p2: int
    p3: int

    @property
    def p(self) -> int:
        return self.p1 + self.p2 + self.p3

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.p1, self.p2, self.p3)


@dataclass(frozen=True)
class SystemConfig:
    """
    Parameters of one SS-SIM-OFDM cluster

    n: subcarriers per cluster, k: active subcarriers, m: PSK order,
    zc_d / zc_u: Zadoff-Chu root and offset, mapper_kind: SI mapper,
    rotation_enabled: rotate shifted codes by e^{j2π(k-1)/B},
    sisr_p1: reduced SI bit count for the SISR mapper.
    """
    n: int
    k: int
    m: int
    zc_d: int = 1
    zc_u: int = 0
    mapper_kind: str = 'combinatorial'
    rotation_enabled: bool = True
    sisr_p1: Optional[int] = None
    budget: BitBudget = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kind = MAPPER_ALIASES.get(self.mapper_kind, self.mapper_kind)
        object.__setattr__(self, 'mapper_kind', kind)
        object.__setattr__(self, 'budget', _check_and_budget(self))

    @property
    def num_index_sets(self) -> int:
        """C(N, K)"""
        return int(comb(self.n, self.k, exact=True))

    @property
    def full_p1(self) -> int:
        """floor(log2 C(N,K)), the combinatorial SI bit count"""
        return floor_log2(self.num_index_sets)

    @property
    def num_codes(self) -> int:
        return 2 ** self.budget.p2

    @property
    def rotation_denominator(self) -> int:
        """B = MK - 1"""
        return self.m * self.k - 1

    def label(self) -> str:
        return f"({self.n},{self.k},{self.m}) {self.mapper_kind}"

    @classmethod
    def from_mapping(cls, settings: Mapping[str, Any]) -> 'SystemConfig':
        """Build from flat settings (n, k, m, mapper, zc_d, zc_u, rotation, sisr_p1)"""
        try:
            return cls(
                n=int(settings['n']),
                k=int(settings['k']),
                m=int(settings['m']),
                zc_d=int(settings.get('zc_d', 1)),
                zc_u=int(settings.get('zc_u', 0)),
                mapper_kind=str(settings.get('mapper', 'combinatorial')),
                rotation_enabled=bool(settings.get('rotation', True)),
                sisr_p1=_optional_int(settings.get('sisr_p1')),
            )
        except KeyError as e:
            raise ConfigError(f"Missing system parameter: {e.args[0]}") from e


def _check_and_budget(config: SystemConfig) -> BitBudget:
    n, k, m = config.n, config.k, config.m

    if n < 2:
        raise ConfigError(f"N must be at least 2, got {n}")
    if not 1 <= k <= n:
        raise ConfigError(f"K must satisfy 1 <= K <= N, got K={k}, N={n}")
    if m < 2 or not _is_power_of_two(m):
        raise ConfigError(f"M must be a power of two >= 2, got {m}")
    if math.gcd(config.zc_d, k) != 1:
        raise ConfigError(f"zc_d={config.zc_d} is not relatively prime to K={k}")
    if config.mapper_kind not in MAPPER_KINDS:
        raise ConfigError(f"Unknown mapper '{config.mapper_kind}', expected one of {MAPPER_KINDS}")

    b = m * k - 1
    if b < 1:
        raise ConfigError(f"Rotation denominator B=MK-1 must be >= 1, got {b}")
    if config.rotation_enabled and (math.gcd(b, 2) != 1 or math.gcd(b, m * k) != 1):
        raise ConfigError(f"B={b} must be odd and relatively prime to MK={m * k}")

    full_p1 = floor_log2(int(comb(n, k, exact=True)))
    p1 = full_p1
    if config.mapper_kind == 'sisr':
        p1 = config.sisr_p1 if config.sisr_p1 is not None else full_p1 - 1
        if p1 < 1:
            raise ConfigError(f"SISR needs at least one SI bit, got p1={p1} for (N,K)=({n},{k})")
        if p1 >= full_p1:
            raise ConfigError(f"SISR p1={p1} must be below floor(log2 C(N,K))={full_p1}")
    elif config.sisr_p1 is not None:
        logger.debug(f"sisr_p1 ignored for mapper {config.mapper_kind}")

    return BitBudget(p1=p1, p2=floor_log2(k), p3=floor_log2(m))


def validate(config: Any) -> SystemConfig:
    """
    Check raw parameters and return a validated SystemConfig

    Accepts a SystemConfig, a settings mapping or an (N, K, M[, d, u]) tuple.
    The bit budget is attached as ``config.budget``.
    """
    if isinstance(config, SystemConfig):
        return SystemConfig(
            n=config.n, k=config.k, m=config.m, zc_d=config.zc_d, zc_u=config.zc_u,
            mapper_kind=config.mapper_kind, rotation_enabled=config.rotation_enabled,
            sisr_p1=config.sisr_p1,
        )
    if isinstance(config, Mapping):
        return SystemConfig.from_mapping(config)
    values = tuple(config)
    if not 3 <= len(values) <= 5:
        raise ConfigError(f"Expected (N, K, M[, d, u]), got {values}")
    n, k, m = values[:3]
    zc_d = values[3] if len(values) > 3 else 1
    zc_u = values[4] if len(values) > 4 else 0
    return SystemConfig(n=int(n), k=int(k), m=int(m), zc_d=int(zc_d), zc_u=int(zc_u))


def spectral_efficiency(config: SystemConfig) -> float:
    """(p1 + p2 + p3) / N in bps/Hz"""
    return config.budget.p / config.n


def split_bits(bits: Sequence[int], budget: BitBudget) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split p bits into (SI bits, code bits, M-ary bits), in that order"""
    arr = DataValidator.validate_bits(bits, budget.p)
    return (arr[:budget.p1],
            arr[budget.p1:budget.p1 + budget.p2],
            arr[budget.p1 + budget.p2:])


def join_bits(si_bits: Sequence[int], code_bits: Sequence[int],
              mary_bits: Sequence[int]) -> np.ndarray:
    """Inverse of split_bits"""
    return np.concatenate([
        DataValidator.validate_bits(si_bits),
        DataValidator.validate_bits(code_bits),
        DataValidator.validate_bits(mary_bits),
    ]).astype(np.uint8)


def bits_to_int(bits: Sequence[int]) -> int:
    """Big-endian bit string to integer"""
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, width: int) -> np.ndarray:
    """Integer to big-endian bit string of the given width"""
    if width < 0 or value < 0 or value >= (1 << width):
        raise ConfigError(f"{value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def bit_matrix_to_int(bits: np.ndarray) -> np.ndarray:
    """Row-wise big-endian conversion of a (trials, w) bit matrix"""
    bits = np.asarray(bits, dtype=np.int64)
    if bits.shape[1] == 0:
        return np.zeros(bits.shape[0], dtype=np.int64)
    weights = 1 << np.arange(bits.shape[1] - 1, -1, -1, dtype=np.int64)
    return bits @ weights


def int_to_bit_matrix(values: np.ndarray, width: int) -> np.ndarray:
    """Row-wise inverse of bit_matrix_to_int"""
    values = np.asarray(values, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((values[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
