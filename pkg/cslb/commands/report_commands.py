# Standard Imports
from pathlib import Path

# Project-Specific Imports
from cslb.commands.common import global_flags
from cslb.harness.ExperimentReport import SECTIONS
from cslb.harness.report import load_report, afr_table, write_sweep_charts


def register(subparsers):
    parser = subparsers.add_parser('report', parents=[global_flags()],
                                   help='print the AFR table of a report directory and render its sweep charts')
    parser.add_argument('dir', help='directory containing report.json')
    parser.set_defaults(handler=cmd_report)


def cmd_report(args) -> int:
    report = load_report(args.dir)

    for section in SECTIONS:
        if not report.cells(section):
            continue
        table = afr_table(report, section)
        if table.empty:
            continue
        print(f"{section}:")
        print(table.to_string(float_format=lambda v: f'{v:.3f}'))

    for path in write_sweep_charts(report, Path(args.dir)):
        print(f"chart written to {path}")
    return 0
