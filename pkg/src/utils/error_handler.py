# error_handler.py - Error types and classification for the simulator
import logging
from datetime import datetime
from typing import Any, Dict

logger = logging.getLogger(__name__)


class SimulatorError(Exception):
    """Base class for all simulator errors"""


class ConfigError(SimulatorError):
    """Invalid system or sweep parameters"""


class ValidationError(SimulatorError):
    """Malformed input data (bit strings, vectors, lists)"""


class InvalidSiSymbolError(SimulatorError):
    """An index set that is not part of the SI family"""

    def __init__(self, index_set, message: str = None):
        self.index_set = tuple(sorted(index_set))
        super().__init__(message or f"Index set {self.index_set} is not in the SI family")


class EnumerationLimitError(SimulatorError):
    """Exhaustive enumeration requested beyond the supported size"""


class OutputError(SimulatorError):
    """Result file could not be written"""


class ErrorHandler:
    """Classifies simulator errors into actionable reports"""

    def handle(self, error: Exception, context: str = "") -> Dict[str, Any]:
        """Classify an error, log it and return the report"""
        error_info = {
            'timestamp': datetime.now().isoformat(),
            'error_type': type(error).__name__,
            'context': context,
            'message': str(error),
        }

        if isinstance(error, ConfigError):
            error_info.update(self._handle_config_error(error))
        elif isinstance(error, ValidationError):
            error_info.update(self._handle_validation_error(error))
        elif isinstance(error, EnumerationLimitError):
            error_info.update(self._handle_enumeration_error(error))
        elif isinstance(error, (OutputError, OSError)):
            error_info.update(self._handle_output_error(error))
        else:
            error_info.update(self._handle_generic_error(error))

        self._log_error(error_info)
        return error_info

    def _handle_config_error(self, error: ConfigError) -> Dict[str, Any]:
        return {
            'severity': 'CRITICAL',
            'category': 'Configuration',
            'solutions': [
                "1. Check N, K, M: K <= N and M a power of two",
                "2. zc_d must be relatively prime to K",
                "3. Review the key=value file and CLI overrides",
            ],
            'exit_code': 2,
        }

    def _handle_validation_error(self, error: ValidationError) -> Dict[str, Any]:
        return {
            'severity': 'HIGH',
            'category': 'Validation',
            'solutions': [
                "1. Check bit string lengths against the bit budget",
                "2. SNR lists must be finite and strictly increasing",
            ],
            'exit_code': 2,
        }

    def _handle_enumeration_error(self, error: EnumerationLimitError) -> Dict[str, Any]:
        return {
            'severity': 'MEDIUM',
            'category': 'Enumeration',
            'solutions': [
                "1. Use a smaller (N, K, M)",
                "2. Re-run with --sampled for a Monte Carlo estimate",
            ],
            'exit_code': 3,
        }

    def _handle_output_error(self, error: Exception) -> Dict[str, Any]:
        return {
            'severity': 'HIGH',
            'category': 'Output',
            'solutions': [
                "1. Check that the output directory exists and is writable",
            ],
            'exit_code': 4,
        }

    def _handle_generic_error(self, error: Exception) -> Dict[str, Any]:
        return {
            'severity': 'MEDIUM',
            'category': 'Unknown',
            'solutions': [
                "1. Re-run with --log-level DEBUG for details",
            ],
            'exit_code': 1,
        }

    def _log_error(self, error_info: Dict[str, Any]):
        severity = error_info.get('severity', 'UNKNOWN')
        category = error_info.get('category', 'UNKNOWN')

        logger.error(f"[{severity}] {category} Error: {error_info['message']}")
        for solution in error_info.get('solutions', []):
            logger.info(f"   {solution}")


error_handler = ErrorHandler()
