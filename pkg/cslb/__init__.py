"""
cslb

Counter-sample laboratory: a small numpy network engine, preprocessor
defenses, query-based black-box attacks and the evaluation harness that plays
them against each other.
"""
# Standard Imports
import argparse


# MAIN CODE HERE
def create_cli() -> argparse.ArgumentParser:
    # Command modules pull in the whole package, so they load on demand
    from cslb.commands import train_commands, attack_commands, experiment_commands, report_commands

    parser = argparse.ArgumentParser(
        prog='cslb',
        description='Counter-sample defense laboratory. Exit codes: 0 success, 2 configuration or usage error, '
                    '3 training failure, 4 runtime failure.')
    subparsers = parser.add_subparsers(dest='command', metavar='{train,attack,grid,sweep,adaptive,report}')
    subparsers.required = True

    train_commands.register(subparsers)
    attack_commands.register(subparsers)
    experiment_commands.register(subparsers)
    report_commands.register(subparsers)

    return parser
