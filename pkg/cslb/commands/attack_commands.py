# Standard Imports
from dataclasses import replace

# Project-Specific Imports
from cslb.commands.common import global_flags, experiment_flags, run_config, experiment_spec
from cslb.errors import LabError
from cslb.harness.grid import run_cells, new_report
from cslb.harness.report import emit_report


def register(subparsers):
    parser = subparsers.add_parser('attack', parents=[global_flags(), experiment_flags()],
                                   help='run one defense x attack cell')
    parser.add_argument('--defense', required=True, help='defense name or kind')
    parser.add_argument('--attack', required=True, help='attack name or kind')
    parser.set_defaults(handler=cmd_attack)


def cmd_attack(args) -> int:
    config = run_config(args)
    defense = config.find_defense(args.defense)
    attack = config.find_attack(args.attack)
    spec = replace(experiment_spec(config, args), defenses=[defense], attacks=[attack])

    report = new_report(spec)
    cell, = run_cells(spec, [(defense, attack, 1)], desc='attack')
    report.sections['grid'] = [cell]
    emit_report(report, spec.output_dir)

    if not cell.ok:
        raise LabError(f"Cell {cell.defense} x {cell.attack} failed: {cell.error}")
    mean_queries = 'n/a' if cell.mean_queries is None else f'{cell.mean_queries:.1f}'
    print(f"{cell.defense} x {cell.attack}: AFR {cell.afr:.4f} over {cell.n} samples, mean queries {mean_queries}")
    return 0
