# experiments.py - Named reproduction presets (one CSV per run)
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from ..system.system_config import SystemConfig, spectral_efficiency
from ..utils.config_manager import ConfigManager, parse_snr_spec
from ..utils.error_handler import ConfigError
from ..utils.data_validator import DataValidator
from .ber_simulator import BerSimulator, SweepConfig
from .ber_statistics import emit_csv

logger = logging.getLogger(__name__)


@dataclass
class Experiment:
    name: str
    description: str
    runs: List[Dict[str, Any]]
    snr_db: List[float] = field(default_factory=list)
    spectral_efficiency: Optional[float] = None

    @classmethod
    def from_mapping(cls, name: str, data: Mapping[str, Any]) -> 'Experiment':
        runs = list(data.get('runs') or [])
        if not runs:
            raise ConfigError(f"Experiment '{name}' has no runs")
        snr = parse_snr_spec(data['snr_db']) if 'snr_db' in data else []
        se = data.get('spectral_efficiency')
        return cls(name, str(data.get('description', '')), runs, snr,
                   float(se) if se is not None else None)

    def systems(self) -> List[SystemConfig]:
        for run in self.runs:
            DataValidator.validate_config_data(run, ["n", "k", "m"])
        systems = [SystemConfig.from_mapping(run) for run in self.runs]
        if self.spectral_efficiency is not None:
            for system in systems:
                if abs(spectral_efficiency(system) - self.spectral_efficiency) > 1e-12:
                    raise ConfigError(f"Experiment '{self.name}': {system.label()} has SE "
                                      f"{spectral_efficiency(system)}, expected {self.spectral_efficiency}")
        return systems


def load_experiments(manager: Optional[ConfigManager] = None) -> Dict[str, Experiment]:
    manager = manager or ConfigManager()
    return {name: Experiment.from_mapping(name, data) for name, data in manager.get_experiments().items()}


def experiment_sweeps(experiment: Experiment, settings: Mapping[str, Any]) -> List[SweepConfig]:
    """
    Sweep configs of an experiment

    Each run names its system and may set detector and csi; SNR grid, seed,
    stop rule and workers come from ``settings`` unless the preset fixes the grid.
    """
    snr = experiment.snr_db or settings['snr_db']
    sweeps = []
    for run, system in zip(experiment.runs, experiment.systems()):
        sweeps.append(SweepConfig(
            system=system,
            detector_kind=str(run.get('detector', settings.get('detector', 'ml'))),
            snr_db_list=snr,
            min_bit_errors=int(settings.get('min_errors', 200)),
            max_bits=int(settings.get('max_bits', 10 ** 7)),
            master_seed=int(settings.get('seed', 0)),
            csi_mode=str(run.get('csi', settings.get('csi', 'perfect'))),
            workers=int(settings.get('workers', 1)),
            llr_alphabet=str(run.get('llr_alphabet', 'auto')),
        ))
    return sweeps


def run_file_name(experiment: Experiment, index: int, sweep: SweepConfig) -> str:
    c = sweep.system
    return (f"{experiment.name}_{index:02d}_{c.mapper_kind}_n{c.n}k{c.k}m{c.m}_"
            f"{sweep.detector_kind}_{sweep.csi_mode}.csv")


def run_experiment(name: str, out_dir: Union[str, Path], settings: Mapping[str, Any],
                   manager: Optional[ConfigManager] = None) -> List[Path]:
    experiments = load_experiments(manager)
    if name not in experiments:
        raise ConfigError(f"Unknown experiment '{name}', available: {sorted(experiments)}")
    experiment = experiments[name]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    paths = []
    for i, sweep in enumerate(experiment_sweeps(experiment, settings)):
        logger.info(f"Experiment {name} run {i + 1}: {sweep.system.label()} / {sweep.detector_kind} / {sweep.csi_mode}")
        result = BerSimulator(sweep, run_name=name).run()
        paths.append(emit_csv(result.points, out_dir / run_file_name(experiment, i, sweep), include_ebn0=True))
    return paths
