#!/usr/bin/env python3
# main.py - Command line entry point for the link simulator
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..analysis import DETECTOR_KINDS, bep_bound_estimate, enumerate_pees, flops_sweep
from ..detectors import DETECTORS, LLR_ALPHABETS
from ..mappers.base_mapper import family_metrics
from ..simulation import BerSimulator, SweepConfig, build_link, ebn0_db, emit_csv, load_experiments, run_experiment
from ..simulation.ber_statistics import CSV_COLUMNS
from ..system.system_config import MAPPER_KINDS, SystemConfig, spectral_efficiency
from ..utils.config_manager import ConfigManager
from ..utils.error_handler import OutputError, SimulatorError, error_handler
from ..utils.logger import setup_logging
from ..waveform.channel import CSI_MODES

logger = logging.getLogger(__name__)

N_D_CONVENTION = "ordered/2M"


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group('system and sweep')
    group.add_argument('--config', metavar='FILE', help='key=value settings file')
    group.add_argument('--n', type=int, help='subcarriers per cluster')
    group.add_argument('--k', type=int, help='active subcarriers')
    group.add_argument('--m', type=int, help='PSK order')
    group.add_argument('--mapper', choices=list(MAPPER_KINDS) + ['comb'])
    group.add_argument('--zc-d', dest='zc_d', type=int)
    group.add_argument('--zc-u', dest='zc_u', type=int)
    group.add_argument('--no-rotation', dest='rotation', action='store_const', const=False,
                       help='disable the code rotation (ablation)')
    group.add_argument('--sisr-p1', dest='sisr_p1', type=int)
    group.add_argument('--seed', type=int)
    group.add_argument('--snr-db', dest='snr_db', metavar='SPEC', help='e.g. 0:5:40 or 10,20,30')
    group.add_argument('--min-errors', dest='min_errors', type=int)
    group.add_argument('--max-bits', dest='max_bits', type=int)
    group.add_argument('--csi', choices=CSI_MODES)
    group.add_argument('--detector', choices=sorted(DETECTORS))
    group.add_argument('--workers', type=int)
    group.add_argument('--out', metavar='PATH', help='output file (stdout when omitted)')
    group.add_argument('--ebn0', action='store_true', help='append an ebn0_db column')
    group.add_argument('--log-level', dest='log_level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='sssim', description='SS-SIM-OFDM link simulator')
    sub = parser.add_subparsers(dest='command', required=True)

    ber = sub.add_parser('ber', parents=[common], help='Monte Carlo BER sweep')
    ber.add_argument('--noiseless', action='store_true', help='N0 = 0 at every point')
    ber.add_argument('--llr-alphabet', dest='llr_alphabet', choices=LLR_ALPHABETS, default='auto')

    bound = sub.add_parser('bound', parents=[common], help='BEP upper bound per SNR')
    bound.add_argument('--sampled', action='store_true', help='sample transmit hypotheses')
    bound.add_argument('--samples', type=int, default=256)

    diversity = sub.add_parser('diversity', parents=[common], help='G_d and N_d census')
    diversity.add_argument('--sampled', action='store_true')
    diversity.add_argument('--samples', type=int, default=256)
    diversity.add_argument('--csv', action='store_true', help='CSV instead of aligned text')

    fl = sub.add_parser('flops', parents=[common], help='detector flops per subcarrier')
    fl.add_argument('--sweep', action='store_true', help='complexity grid instead of one system')

    codebook = sub.add_parser('codebook', parents=[common], help='spreading codes')
    codebook.add_argument('--csv', action='store_true', help='CSV at full precision instead of text')
    simap = sub.add_parser('simap', parents=[common], help='SI family and its metrics')
    simap.add_argument('--csv', action='store_true', help='CSV instead of aligned text')

    exp = sub.add_parser('experiment', parents=[common], help='run a named preset')
    exp.add_argument('name', nargs='?')
    exp.add_argument('--list', action='store_true', help='list presets')
    return parser


def _settings(args: argparse.Namespace, manager: ConfigManager) -> Dict[str, Any]:
    overrides = {key: getattr(args, key, None) for key in
                 ('n', 'k', 'm', 'mapper', 'zc_d', 'zc_u', 'rotation', 'sisr_p1', 'seed', 'snr_db',
                  'min_errors', 'max_bits', 'csi', 'detector', 'workers', 'out')}
    return manager.resolve(args.config, overrides)


def _write_frame(frame: pd.DataFrame, out: Optional[str]):
    if out:
        emit_csv(frame, out)
    else:
        frame.to_csv(sys.stdout, index=False, lineterminator='\n')


def _write_text(lines: List[str], out: Optional[str]):
    text = '\n'.join(lines) + '\n'
    if not out:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding='utf-8')
    except OSError as e:
        raise OutputError(f"Cannot write {out}: {e}") from e
    logger.info(f"Wrote {len(lines)} lines to {out}")


def _table(frame: pd.DataFrame) -> List[str]:
    return frame.to_string(index=False).splitlines()


def _sig12(value: float) -> str:
    return f"{value:.12g}"


def cmd_ber(args, settings) -> int:
    system = SystemConfig.from_mapping(settings)
    sweep = SweepConfig(
        system=system,
        detector_kind=settings['detector'],
        snr_db_list=settings['snr_db'],
        min_bit_errors=settings['min_errors'],
        max_bits=settings['max_bits'],
        master_seed=settings['seed'],
        csi_mode=settings['csi'],
        workers=settings['workers'],
        llr_alphabet=args.llr_alphabet,
        noiseless=args.noiseless,
    )
    result = BerSimulator(sweep).run()
    frame = pd.DataFrame([p.to_row(args.ebn0) for p in result.points])
    _write_frame(frame, settings.get('out'))
    return 0


def cmd_bound(args, settings) -> int:
    system = SystemConfig.from_mapping(settings)
    link = build_link(system)
    snr_db = np.asarray(settings['snr_db'], dtype=float)
    estimate = bep_bound_estimate(link.modem, 10.0 ** (snr_db / 10.0), args.sampled, args.samples, settings['seed'])
    rows = []
    for s, value, ci in zip(snr_db, estimate.value, estimate.ci95):
        row = {'snr_db': float(s), 'detector': 'bound', 'mapper': system.mapper_kind,
               'n': system.n, 'k': system.k, 'm': system.m, 'csi': settings['csi'],
               'bits_sent': 0, 'bit_errors': 0, 'ber': float(value), 'ci95': float(ci)}
        if args.ebn0:
            row['ebn0_db'] = ebn0_db(float(s), system)
        rows.append(row)
    columns = CSV_COLUMNS + (['ebn0_db'] if args.ebn0 else [])
    _write_frame(pd.DataFrame(rows, columns=columns), settings.get('out'))
    return 0


def cmd_diversity(args, settings) -> int:
    system = SystemConfig.from_mapping(settings)
    link = build_link(system)
    report = enumerate_pees(system, link.family, link.codebook, args.sampled, args.samples, settings['seed'])
    frame = pd.DataFrame([{'mapper': system.mapper_kind, 'n': system.n, 'k': system.k, 'm': system.m,
                           **report.to_dict(), 'n_d_convention': N_D_CONVENTION}])
    if args.csv:
        _write_frame(frame, settings.get('out'))
        return 0
    header = [f"# {system.label()}",
              f"# N_d counts unordered pairs modulo a common PSK rotation: n_d = n_d_ordered / 2M "
              f"(2M = {2 * system.m})"]
    _write_text(header + _table(frame.drop(columns='n_d_convention')), settings.get('out'))
    return 0


def cmd_flops(args, settings) -> int:
    configs = None if args.sweep else [SystemConfig.from_mapping(settings)]
    _write_frame(flops_sweep(DETECTOR_KINDS, configs), settings.get('out'))
    return 0


def cmd_codebook(args, settings) -> int:
    system = SystemConfig.from_mapping(settings)
    codebook = build_link(system, use_scorer=False).codebook
    margin = codebook.full_difference_margin(system.m)
    if args.csv:
        _write_frame(codebook.to_frame(), settings.get('out'))
        return 0
    lines = [f"# {system.label()}: {codebook.num_codes} codes of length {codebook.length}, "
             f"B={codebook.b}, full-difference margin {_sig12(margin)}"]
    for c, code in enumerate(codebook.codes):
        pairs = ' '.join(f"({_sig12(v.real)}, {_sig12(v.imag)})" for v in code)
        lines.append(f"c{c + 1}: {pairs}")
    _write_text(lines, settings.get('out'))
    return 0


def cmd_simap(args, settings) -> int:
    system = SystemConfig.from_mapping(settings)
    link = build_link(system)
    p1 = system.budget.p1
    rows = [{'index': i, 'bits': format(i, f'0{p1}b') if p1 else '', 'theta': ' '.join(map(str, theta))}
            for i, theta in enumerate(link.family)]
    frame = pd.DataFrame(rows, columns=['index', 'bits', 'theta'])
    if args.csv:
        _write_frame(frame, settings.get('out'))
        return 0
    header = [f"# {system.label()}: {len(link.family)} index sets, SE={spectral_efficiency(system):g} bps/Hz"]
    if len(link.family) > 1:
        kappa, gamma = family_metrics(link.family)
        header.append(f"# kappa={kappa} Gamma={gamma} balanced={link.family.balanced}")
    _write_text(header + _table(frame), settings.get('out'))
    return 0


def cmd_experiment(args, settings) -> int:
    if args.list or not args.name:
        for name, experiment in load_experiments().items():
            print(f"{name}: {experiment.description} ({len(experiment.runs)} runs)")
        return 0
    out_dir = settings.get('out') or 'results'
    paths = run_experiment(args.name, Path(out_dir), settings)
    for path in paths:
        print(path)
    return 0


COMMANDS = {
    'ber': cmd_ber,
    'bound': cmd_bound,
    'diversity': cmd_diversity,
    'flops': cmd_flops,
    'codebook': cmd_codebook,
    'simap': cmd_simap,
    'experiment': cmd_experiment,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    manager = ConfigManager()

    log_settings = manager.get_logging_settings()
    if args.log_level:
        log_settings['level'] = args.log_level
    setup_logging(**log_settings)

    try:
        settings = _settings(args, manager)
        return COMMANDS[args.command](args, settings)
    except (SimulatorError, OSError) as e:
        report = error_handler.handle(e, context=args.command)
        print(f"error: {e}", file=sys.stderr)
        for line in report.get('solutions', []):
            print(f"  {line}", file=sys.stderr)
        return report.get('exit_code', 1)


if __name__ == '__main__':
    sys.exit(main())
