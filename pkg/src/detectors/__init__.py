# Detectors Module - ML, near-ML and LLR-MRC receivers
__version__ = "1.0.0"

from .base_detector import BaseDetector, BatchDetection, DetectionResult, FlopCounter, residual_energy
from .llr_mrc_detector import LLR_ALPHABETS, LlrMrcDetector, llr_scores, resolve_llr_alphabet, resolve_theta_order
from .ml_detector import MlDetector
from .near_ml_detector import NearMlDetector
from ..utils.error_handler import ConfigError

DETECTORS = {
    'ml': MlDetector,
    'near-ml': NearMlDetector,
    'llr-mrc': LlrMrcDetector,
}


def create_detector(kind: str, modem, **kwargs) -> BaseDetector:
    """Detector of the given kind for a ClusterModem"""
    try:
        detector_cls = DETECTORS[kind]
    except KeyError:
        raise ConfigError(f"Unknown detector '{kind}', expected one of {sorted(DETECTORS)}") from None
    return detector_cls.from_modem(modem, **kwargs)


def detect_ml(y, h_hat, family, codebook, psk) -> DetectionResult:
    return MlDetector(family, codebook, psk).detect(y, h_hat)


def detect_near_ml(y, h_hat, family, codebook, psk) -> DetectionResult:
    return NearMlDetector(family, codebook, psk).detect(y, h_hat)


def detect_llr_mrc(y, h_hat, family, codebook, psk, llr_alphabet: str = 'auto') -> DetectionResult:
    return LlrMrcDetector(family, codebook, psk, llr_alphabet).detect(y, h_hat)


__all__ = [
    'BaseDetector',
    'BatchDetection',
    'DetectionResult',
    'FlopCounter',
    'MlDetector',
    'NearMlDetector',
    'LlrMrcDetector',
    'LLR_ALPHABETS',
    'DETECTORS',
    'create_detector',
    'detect_ml',
    'detect_near_ml',
    'detect_llr_mrc',
    'llr_scores',
    'resolve_llr_alphabet',
    'resolve_theta_order',
    'residual_energy',
]
