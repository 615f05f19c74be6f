# config_manager.py - Layered configuration (YAML defaults, key=value file, CLI overrides)
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Union

import numpy as np
import yaml
from dotenv import dotenv_values

from .error_handler import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"


def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"Cannot interpret {value!r} as a boolean")


def _to_optional_int(value: Any) -> Optional[int]:
    if value is None or str(value).strip().lower() in ("", "none", "null"):
        return None
    return int(value)


def _to_optional_str(value: Any) -> Optional[str]:
    if value is None or str(value).strip().lower() in ("", "none", "null"):
        return None
    return str(value).strip()


def parse_snr_spec(spec: Union[str, float, int, List[float]]) -> List[float]:
    """
    Parse an SNR list

    Accepts "start:step:stop" (inclusive stop), a comma-separated list,
    a single number or an already parsed list.
    """
    if isinstance(spec, (list, tuple)):
        return [float(v) for v in spec]
    if isinstance(spec, (int, float)):
        return [float(spec)]

    text = str(spec).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"SNR range must be start:step:stop, got {text!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ConfigError(f"SNR step must be positive, got {step}")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [float(np.round(start + i * step, 10)) for i in range(max(count, 0))]
    return [float(v) for v in text.split(",") if v.strip()]


# flat key -> converter
SETTING_TYPES: Dict[str, Callable[[Any], Any]] = {
    'n': int,
    'k': int,
    'm': int,
    'mapper': str,
    'zc_d': int,
    'zc_u': int,
    'rotation': _to_bool,
    'sisr_p1': _to_optional_int,
    'seed': int,
    'snr_db': parse_snr_spec,
    'min_errors': int,
    'max_bits': int,
    'csi': str,
    'detector': str,
    'workers': int,
    'out': _to_optional_str,
}


class ConfigManager:
    """Loads YAML defaults and merges key=value files and CLI overrides on top"""

    def __init__(self, config_dir: Union[str, Path, None] = None):
        self.config_dir = Path(config_dir) if config_dir else DEFAULT_CONFIG_DIR

    def load_yaml(self, name: str) -> Dict[str, Any]:
        """Load config/<name>.yaml, empty dict when missing"""
        path = self.config_dir / f"{name}.yaml"
        if not path.exists():
            logger.warning(f"Config file not found: {path}")
            return {}
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Failed to parse {path}: {e}") from e

    def get_app_config(self) -> Dict[str, Any]:
        return self.load_yaml("app_config")

    def get_logging_settings(self) -> Dict[str, Any]:
        """Logging settings with defaults filled in"""
        settings = {
            'level': 'INFO',
            'log_file': None,
            'max_bytes': 10 * 1024 * 1024,
            'backup_count': 5,
            'console': True,
        }
        logging_cfg = self.get_app_config().get('logging', {}) or {}
        if 'file' in logging_cfg:
            logging_cfg = dict(logging_cfg)
            logging_cfg['log_file'] = logging_cfg.pop('file')
        settings.update({k: v for k, v in logging_cfg.items() if k in settings})
        return settings

    def get_defaults(self) -> Dict[str, Any]:
        """System and sweep defaults flattened to setting keys"""
        data = self.load_yaml("system_config")
        flat: Dict[str, Any] = {}
        for section in ('system', 'sweep'):
            flat.update(data.get(section, {}) or {})
        return flat

    def get_experiments(self) -> Dict[str, Any]:
        return self.load_yaml("experiments_config").get('experiments', {}) or {}

    @staticmethod
    def load_key_value_file(path: Union[str, Path]) -> Dict[str, str]:
        """Read a line-oriented key=value file without touching os.environ"""
        if not os.path.exists(path):
            raise ConfigError(f"Config file not found: {path}")
        values = dotenv_values(path)
        settings = {}
        for key, value in values.items():
            name = key.strip().lower().replace('-', '_')
            if name not in SETTING_TYPES:
                raise ConfigError(f"Unknown setting {key!r} in {path}")
            settings[name] = value
        logger.debug(f"Loaded {len(settings)} settings from {path}")
        return settings

    def resolve(self, kv_file: Optional[Union[str, Path]] = None,
                overrides: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
        """
        Merge defaults < key=value file < overrides and convert types

        Args:
            kv_file: Optional key=value file
            overrides: Values from CLI flags; None entries are ignored

        Returns:
            dict: typed flat settings
        """
        merged: Dict[str, Any] = dict(self.get_defaults())
        if kv_file:
            merged.update(self.load_key_value_file(kv_file))
        if overrides:
            merged.update({k: v for k, v in overrides.items() if v is not None})

        settings: Dict[str, Any] = {}
        for key, value in merged.items():
            converter = SETTING_TYPES.get(key)
            if converter is None:
                logger.debug(f"Ignoring unknown setting {key}")
                continue
            try:
                settings[key] = converter(value)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"Invalid value for {key}: {value!r}") from e
        return settings
