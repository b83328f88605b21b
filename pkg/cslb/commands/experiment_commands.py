"""
experiment_commands.py

grid, sweep and adaptive subcommands. Each writes the full report artifacts;
per-cell failures are logged and the command fails only when every cell failed.
"""
# Project-Specific Imports
from cslb.app_logger import logger
from cslb.commands.common import global_flags, experiment_flags, run_config, experiment_spec
from cslb.errors import ConfigError, LabError
from cslb.harness.adaptive import run_adaptive, STRATEGIES
from cslb.harness.grid import run_grid, all_failed
from cslb.harness.report import emit_report, afr_table
from cslb.harness.sweeps import run_sweeps


def _number_list(text: str, cast):
    try:
        return [cast(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise ConfigError(f"Expected a comma-separated list of numbers, got {text!r}")


def register(subparsers):
    parents = [global_flags(), experiment_flags()]

    grid = subparsers.add_parser('grid', parents=parents, help='defenses x attacks grid')
    grid.set_defaults(handler=cmd_grid)

    sweep = subparsers.add_parser('sweep', parents=parents, help='counter-sample alpha and k sweeps')
    sweep.add_argument('--alphas', help='comma-separated step sizes (default: experiment.alphas)')
    sweep.add_argument('--ks', help='comma-separated iteration counts (default: experiment.ks)')
    sweep.set_defaults(handler=cmd_sweep)

    adaptive = subparsers.add_parser('adaptive', parents=parents, help='adaptive adversary strategies')
    adaptive.add_argument('--strategy', choices=STRATEGIES, default='both')
    adaptive.set_defaults(handler=cmd_adaptive)


def _finish(report, spec) -> int:
    emit_report(report, spec.output_dir)
    cells = report.cells()
    failed = [c for c in cells if not c.ok]
    if failed:
        logger.error(f"{len(failed)} of {len(cells)} cells failed")
    if all_failed(cells):
        raise LabError("Every cell failed")
    return 0


def cmd_grid(args) -> int:
    config = run_config(args)
    spec = experiment_spec(config, args)
    report = run_grid(spec)
    print(afr_table(report).to_string(float_format=lambda v: f'{v:.3f}'))
    return _finish(report, spec)


def cmd_sweep(args) -> int:
    config = run_config(args)
    spec = experiment_spec(config, args)
    experiment = config.experiment
    alphas = _number_list(args.alphas, float) if args.alphas is not None else experiment.alphas
    ks = _number_list(args.ks, int) if args.ks is not None else experiment.ks
    # An explicit flag for one parameter restricts the run to that sweep
    if args.alphas is not None and args.ks is None:
        ks = []
    if args.ks is not None and args.alphas is None:
        alphas = []

    report = run_sweeps(spec, alphas, ks, k=experiment.fixed_k, alpha=experiment.fixed_alpha)
    for name, curve in sorted(report.sweeps.items()):
        print(f"sweep over {name}:")
        for point in curve['points']:
            afrs = ', '.join(f"{a} {'n/a' if v is None else f'{v:.3f}'}" for a, v in point['afr'].items())
            print(f"  {name}={point['value']:g}: clean ACC {point['clean_accuracy']:.3f}; AFR {afrs}")

    emit_report(report, spec.output_dir)
    errors = [e for curve in report.sweeps.values() for p in curve['points'] for e in p['errors'].values()]
    total = sum(len(p['afr']) for curve in report.sweeps.values() for p in curve['points'])
    if errors and len(errors) == total:
        raise LabError("Every sweep cell failed")
    return 0


def cmd_adaptive(args) -> int:
    config = run_config(args)
    spec = experiment_spec(config, args)
    report = run_adaptive(spec, args.strategy)
    for section, cells in report.sections.items():
        print(f"{section}:")
        for cell in cells:
            afr = 'failed' if cell.afr is None else f'{cell.afr:.3f}'
            print(f"  {cell.defense} x {cell.attack} M={cell.M} step_factor={cell.step_factor:g}: AFR {afr}")
    return _finish(report, spec)
