# Bridge to DIMACS-speaking external solvers

import logging
import os
import shlex
import subprocess
import tempfile
import time

from core.encoder import CnfFormula
from gcl_utils.dimacs import parse_solver_output, write_dimacs
from .config import SolveConfig, SolveOutcome

logger = logging.getLogger(__name__)


def solve_external(f: CnfFormula, command: str, cfg: SolveConfig) -> SolveOutcome:
    """
    Run an external solver on a temporary DIMACS file.

    The command is split shell-style and the CNF path appended; its
    stdout is read for 's' and 'v' lines. A timeout yields 'unknown'.

    Raises
    ------
    FileNotFoundError
        If the solver executable cannot be found.
    """
    argv = shlex.split(command)
    fd, path = tempfile.mkstemp(suffix='.cnf', prefix='gcl_')
    start = time.monotonic()
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as fh:
            fh.write(write_dimacs(f))
        try:
            proc = subprocess.run(argv + [path], capture_output=True, text=True, timeout=cfg.timeout)
        except subprocess.TimeoutExpired:
            logger.warning("External solver %r timed out after %.0fs", command, cfg.timeout)
            return SolveOutcome('unknown', None, None, {'time': time.monotonic() - start}, 'external')
    finally:
        os.unlink(path)

    status, model = parse_solver_output(proc.stdout)
    stats = {'time': time.monotonic() - start, 'returncode': proc.returncode}
    logger.info("External solver %r: %s (exit %d)", command, status, proc.returncode)
    if status == 'sat':
        literals = [v if model.get(v, False) else -v for v in range(1, f.num_vars + 1)]
        return SolveOutcome('sat', literals, None, stats, 'external')
    return SolveOutcome(status, None, None, stats, 'external')
