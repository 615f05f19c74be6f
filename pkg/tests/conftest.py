# conftest.py - Shared fixtures
import numpy as np
import pytest

from src.mappers import CombinatorialMapper
from src.mappers.base_mapper import SiFamily
from src.system.system_config import SystemConfig
from src.waveform.modem import ClusterModem
from src.waveform.spread_codes import build_codebook
from tests.helpers import OSI_4_2


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def config_422():
    return SystemConfig(4, 2, 2)


@pytest.fixture
def modem_422(config_422):
    family = CombinatorialMapper(4, 2, config_422.budget.p1).build()
    return ClusterModem(config_422, family, build_codebook(config_422))


@pytest.fixture
def osi_modem_422():
    config = SystemConfig(4, 2, 2, mapper_kind='osi')
    return ClusterModem(config, SiFamily(OSI_4_2, 4, 'osi'), build_codebook(config))
