# Waveform Module - spreading codes, modem and channel
__version__ = "1.0.0"

from .channel import (
    CSI_MODES,
    ChannelRealization,
    apply_channel,
    corrupt_csi,
    complex_normal,
    mmse_error_variance,
    n0_to_snr_db,
    observe,
    realize,
    sample_channel,
    snr_db_to_n0,
)
from .modem import (
    ClusterModem,
    ClusterSymbol,
    PskConstellation,
    PskSymbol,
    decode,
    encode,
    gray_decode,
    gray_encode,
    hypothesis_table,
    precode,
    psk_modulate,
    transmit_vectors,
)
from .spread_codes import Codebook, build_codebook, cyclic_shift, psk_points, zc_base

__all__ = [
    'zc_base',
    'cyclic_shift',
    'psk_points',
    'Codebook',
    'build_codebook',
    'PskConstellation',
    'PskSymbol',
    'ClusterSymbol',
    'ClusterModem',
    'psk_modulate',
    'precode',
    'encode',
    'decode',
    'gray_encode',
    'gray_decode',
    'hypothesis_table',
    'transmit_vectors',
    'ChannelRealization',
    'CSI_MODES',
    'sample_channel',
    'apply_channel',
    'corrupt_csi',
    'realize',
    'observe',
    'complex_normal',
    'snr_db_to_n0',
    'n0_to_snr_db',
    'mmse_error_variance',
]
