# System Module - Cluster parameters and bit budget
__version__ = "1.0.0"

from .system_config import (
    MAPPER_KINDS,
    BitBudget,
    SystemConfig,
    bit_matrix_to_int,
    bits_to_int,
    floor_log2,
    int_to_bit_matrix,
    int_to_bits,
    join_bits,
    spectral_efficiency,
    split_bits,
    validate,
)

__all__ = [
    'MAPPER_KINDS',
    'BitBudget',
    'SystemConfig',
    'validate',
    'spectral_efficiency',
    'split_bits',
    'join_bits',
    'bits_to_int',
    'int_to_bits',
    'bit_matrix_to_int',
    'int_to_bit_matrix',
    'floor_log2',
]
