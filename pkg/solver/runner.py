# Engine dispatch

from core.encoder import CnfFormula
from .cdcl import solve_cdcl
from .config import SolveConfig, SolveOutcome
from .portfolio import solve_portfolio
from .walksat import walksat


def solve(f: CnfFormula, cfg: SolveConfig = SolveConfig()) -> SolveOutcome:
    """
    Solve a formula with the engine cfg.mode selects.

    'cdcl' is complete within the timeout; 'local-search' never answers
    'unsat'; 'portfolio' races both kinds. A timeout always gives
    'unknown', never a wrong status.
    """
    if cfg.mode == 'cdcl':
        return solve_cdcl(f, cfg)
    if cfg.mode == 'local-search':
        return walksat(f, cfg)
    return solve_portfolio(f, cfg)
