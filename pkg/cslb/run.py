"""
run.py

Command-line entry point (`cslb` console script, or `python -m cslb.run`).
Library errors become exit codes here and nowhere else.
"""
# Standard Imports
import logging
import sys
from typing import List

# Project-Specific Imports
from cslb import create_cli
from cslb.app_logger import logger, set_level
from cslb.errors import ConfigError, ReportFormatError, TrainingError, LabError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TRAINING = 3
EXIT_RUNTIME = 4


def main(argv: List[str] = None) -> int:
    parser = create_cli()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    if args.debug:
        set_level(logging.DEBUG)
    elif args.verbose:
        set_level(logging.INFO)

    try:
        return args.handler(args)

    except (ConfigError, ReportFormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    except TrainingError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TRAINING

    except LabError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME

    except Exception as e:
        logger.error(f"Unexpected failure: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
