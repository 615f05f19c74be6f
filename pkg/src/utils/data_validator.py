# data_validator.py - Data Validation Utilities
import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .error_handler import ValidationError

logger = logging.getLogger(__name__)


class DataValidator:
    """Validation utilities for bit strings, signal vectors and sweep inputs"""

    @staticmethod
    def validate_bits(bits: Sequence[int], length: Optional[int] = None) -> np.ndarray:
        """
        Validate a bit string and return it as a uint8 array

        Args:
            bits: Sequence of 0/1 values
            length: Required length (optional)

        Returns:
            np.ndarray: bits as uint8
        """
        if bits is None:
            raise ValidationError("Bit string is None")

        arr = np.asarray(bits)
        if arr.ndim != 1:
            raise ValidationError(f"Bit string must be one-dimensional, got shape {arr.shape}")

        if length is not None and arr.size != length:
            raise ValidationError(f"Expected {length} bits, got {arr.size}")

        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValidationError(f"Bit string contains values other than 0/1: {arr.tolist()}")

        return arr.astype(np.uint8)

    @staticmethod
    def validate_bit_matrix(bits: np.ndarray, width: int) -> np.ndarray:
        """Validate a (trials, width) matrix of bits"""
        arr = np.asarray(bits)
        if arr.ndim != 2 or arr.shape[1] != width:
            raise ValidationError(f"Expected a (trials, {width}) bit matrix, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValidationError("Bit matrix contains values other than 0/1")
        return arr.astype(np.uint8)

    @staticmethod
    def validate_complex_vector(vector: Any, length: int, name: str = "vector") -> np.ndarray:
        """Validate a finite complex vector of a given length"""
        arr = np.asarray(vector, dtype=complex)
        if arr.shape[-1:] != (length,):
            raise ValidationError(f"{name} must have length {length}, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValidationError(f"{name} contains non-finite entries")
        return arr

    @staticmethod
    def validate_snr_list(snr_db: Sequence[float]) -> List[float]:
        """SNR list must be non-empty, finite and strictly increasing"""
        values = [float(v) for v in snr_db]
        if not values:
            raise ValidationError("SNR list is empty")
        if not np.isfinite(values).all():
            raise ValidationError(f"SNR list contains non-finite values: {values}")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValidationError(f"SNR list must be strictly increasing: {values}")
        return values

    @staticmethod
    def validate_config_data(config: Dict[str, Any], required_keys: List[str]) -> bool:
        """
        Validate configuration dictionary

        Args:
            config: Configuration dictionary
            required_keys: List of required keys

        Returns:
            bool: True if valid
        """
        if not isinstance(config, dict):
            raise ValidationError("Config must be a dictionary")

        missing_keys = set(required_keys) - set(config.keys())
        if missing_keys:
            raise ValidationError(f"Missing required config keys: {sorted(missing_keys)}")

        return True
