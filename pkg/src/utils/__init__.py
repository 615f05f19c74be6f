# Utils Module - Logging, errors, configuration and validation
__version__ = "1.0.0"

from .config_manager import ConfigManager, parse_snr_spec
from .error_handler import (
    ConfigError,
    EnumerationLimitError,
    ErrorHandler,
    InvalidSiSymbolError,
    OutputError,
    SimulatorError,
    ValidationError,
)
from .logger import setup_logging, get_simulation_logger
from .data_validator import DataValidator

__all__ = [
    'ConfigManager',
    'parse_snr_spec',
    'ErrorHandler',
    'SimulatorError',
    'ConfigError',
    'ValidationError',
    'InvalidSiSymbolError',
    'EnumerationLimitError',
    'OutputError',
    'setup_logging',
    'get_simulation_logger',
    'DataValidator',
]
