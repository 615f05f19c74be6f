# Simulation Module - Monte Carlo BER harness
__version__ = "1.0.0"

from .ber_simulator import BerSimulator, SweepConfig, ebn0_db, run_sweep, simulate_block
from .ber_statistics import CSV_COLUMNS, BerStats, BlockCounts, SweepResult, emit_csv, stats_frame, wilson_interval
from .experiments import Experiment, experiment_sweeps, load_experiments, run_experiment
from .link_builder import Link, build_link, diversity_scorer
from .random_streams import TRIALS_PER_BLOCK, TrialDraw, block_rng, draw_block, draw_trial

__all__ = [
    'BerSimulator',
    'SweepConfig',
    'run_sweep',
    'simulate_block',
    'ebn0_db',
    'BerStats',
    'BlockCounts',
    'SweepResult',
    'CSV_COLUMNS',
    'emit_csv',
    'stats_frame',
    'wilson_interval',
    'Experiment',
    'load_experiments',
    'experiment_sweeps',
    'run_experiment',
    'Link',
    'build_link',
    'diversity_scorer',
    'TRIALS_PER_BLOCK',
    'TrialDraw',
    'block_rng',
    'draw_block',
    'draw_trial',
]
