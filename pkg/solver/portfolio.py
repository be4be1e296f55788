# Portfolio of one CDCL worker and diversified local-search workers

import logging
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from multiprocessing import Manager
from typing import List, Tuple

from core.encoder import CnfFormula
from .cdcl import solve_cdcl
from .config import SolveConfig, SolveOutcome
from .walksat import walksat

logger = logging.getLogger(__name__)

# Noise levels handed to successive local-search workers
NOISE_LADDER = (0.5, 0.4, 0.6, 0.3, 0.55, 0.45, 0.35, 0.65)


def portfolio_plan(cfg: SolveConfig) -> List[Tuple[str, SolveConfig]]:
    """Engines and configs for each worker: CDCL first, then local search."""
    plan = [('cdcl', cfg.with_(mode='cdcl'))]
    for w in range(1, cfg.portfolio_width):
        noise = NOISE_LADDER[(w - 1) % len(NOISE_LADDER)] if cfg.noise == 0.5 else cfg.noise
        plan.append(('walksat', cfg.with_(mode='local-search', seed=cfg.seed + w, noise=noise)))
    return plan


def _worker(engine: str, num_vars: int, clauses, cfg: SolveConfig, stop) -> SolveOutcome:
    f = CnfFormula(num_vars, clauses)
    if engine == 'cdcl':
        return solve_cdcl(f, cfg, stop=stop)
    return walksat(f, cfg, stop=stop)


def solve_portfolio(f: CnfFormula, cfg: SolveConfig) -> SolveOutcome:
    """
    Race the workers of portfolio_plan(cfg) and keep the first decisive result.

    Workers receive their own copy of the clauses and share only a stop
    event; once one returns 'sat' or 'unsat' the event is set and the
    others wind down. If nobody is decisive the outcome is 'unknown' with
    the lowest best_unsat reported by the local-search workers.
    """
    start = time.monotonic()
    plan = portfolio_plan(cfg)
    clauses = [list(c) for c in f.clauses]
    finished: List[SolveOutcome] = []
    winner = None
    with Manager() as manager:
        stop = manager.Event()
        with ProcessPoolExecutor(max_workers=len(plan)) as pool:
            futures = {pool.submit(_worker, engine, f.num_vars, clauses, wcfg, stop): index
                       for index, (engine, wcfg) in enumerate(plan)}
            pending = set(futures)
            while pending and winner is None:
                done, pending = wait(pending, timeout=cfg.timeout + 5.0, return_when=FIRST_COMPLETED)
                if not done:
                    break
                for future in done:
                    outcome = future.result()
                    outcome.stats['worker'] = futures[future]
                    finished.append(outcome)
                    if outcome.decisive and winner is None:
                        winner = outcome
            stop.set()
            for future in pending:
                future.cancel()

    elapsed = time.monotonic() - start
    if winner is not None:
        winner.stats['portfolio_time'] = elapsed
        logger.info("portfolio: %s from worker %d (%s) in %.2fs",
                    winner.status, winner.stats['worker'], winner.engine, elapsed)
        return winner
    near = [o.best_unsat for o in finished if o.best_unsat is not None]
    best = min(near) if near else None
    logger.info("portfolio: no decisive worker, best_unsat=%s", best)
    return SolveOutcome('unknown', None, best, {'portfolio_time': elapsed, 'workers': len(plan)},
                        'portfolio')
