# helpers.py - Small builders shared by the test modules
import numpy as np

from src.simulation.link_builder import build_link
from src.system.system_config import SystemConfig

# Family built by hand for (N,K)=(4,2): κ = 2, Γ = 24
OSI_4_2 = ((1, 3), (4, 1), (3, 2), (2, 4))


def make_link(n, k, m, mapper='combinatorial', **kwargs):
    return build_link(SystemConfig(n, k, m, mapper_kind=mapper, **kwargs))


def all_bit_words(p):
    """Every p-bit word as rows of a (2^p, p) matrix"""
    values = np.arange(2 ** p)
    return ((values[:, None] >> np.arange(p - 1, -1, -1)) & 1).astype(np.uint8)
