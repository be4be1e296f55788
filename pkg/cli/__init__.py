# Command-line front end for Grid Coloring Lab

import logging
import sys
from typing import List, Optional

from core.errors import GridLabError
from .commands import EXIT_USAGE, dispatch
from .parser import build_parser

logger = logging.getLogger(__name__)


def configure_logging(verbosity: int) -> None:
    """Log to stderr; stdout carries only command output."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run one subcommand.

    Returns
    -------
    int
        0 success, 1 mismatch or rectangle found, 2 usage or domain
        error, 3 timeout or exhausted budget.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return dispatch(args)
    except (GridLabError, FileNotFoundError, ImportError) as exc:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ['main', 'build_parser', 'configure_logging']
