# Analysis Module - error-event analysis and complexity models
__version__ = "1.0.0"

from .complexity import DETECTOR_KINDS, complexity_grid, flops, flops_sweep
from .pairwise_error import (
    BETA_TOL,
    MAX_EXHAUSTIVE_BITS,
    BoundEstimate,
    DiversityReport,
    PeeRecord,
    bep_bound_estimate,
    bep_upper_bound,
    diversity_census,
    diversity_slope,
    enumerate_pees,
    pee_record,
    pep_unconditional,
)

__all__ = [
    'PeeRecord',
    'DiversityReport',
    'BoundEstimate',
    'pep_unconditional',
    'pee_record',
    'enumerate_pees',
    'bep_bound_estimate',
    'bep_upper_bound',
    'diversity_census',
    'diversity_slope',
    'flops',
    'flops_sweep',
    'complexity_grid',
    'DETECTOR_KINDS',
    'BETA_TOL',
    'MAX_EXHAUSTIVE_BITS',
]
