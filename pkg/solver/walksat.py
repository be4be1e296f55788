# WalkSAT/SKC local search with restarts and near-miss tracking

import logging
import random
import time
from typing import List

from core.encoder import CnfFormula
from .config import SolveConfig, SolveOutcome

logger = logging.getLogger(__name__)


def walksat(f: CnfFormula, cfg: SolveConfig, stop=None) -> SolveOutcome:
    """
    Stochastic local search in the WalkSAT/SKC style.

    Each step picks a random unsatisfied clause. A variable whose flip
    breaks no satisfied clause is flipped at once; otherwise, with
    probability cfg.noise a random variable of the clause is flipped,
    else one with the fewest breaks. A fresh random assignment is drawn
    every cfg.max_flips // 10 flips.

    Parameters
    ----------
    f : CnfFormula
        Formula to satisfy.
    cfg : SolveConfig
        Uses seed, timeout, max_flips and noise.
    stop : object with is_set(), optional
        Cooperative cancellation flag.

    Returns
    -------
    SolveOutcome
        'sat' with a model, or 'unknown' with best_unsat, the fewest
        unsatisfied clauses seen. Never 'unsat'.
    """
    start = time.monotonic()
    deadline = start + cfg.timeout
    rng = random.Random(cfg.seed)
    n = f.num_vars
    clauses = [list(c) for c in f.clauses]
    m = len(clauses)

    # occurrences indexed by signed literal (negative ones from the end)
    occurs: List[List[int]] = [[] for _ in range(2 * n + 1)]
    for ci, c in enumerate(clauses):
        for lit in c:
            occurs[lit].append(ci)

    value = [False] * (n + 1)
    true_count = [0] * m
    unsat: List[int] = []
    where = [-1] * m

    def reset():
        for v in range(1, n + 1):
            value[v] = rng.random() < 0.5
        unsat.clear()
        for ci, c in enumerate(clauses):
            t = sum(1 for lit in c if value[lit if lit > 0 else -lit] == (lit > 0))
            true_count[ci] = t
            if t == 0:
                where[ci] = len(unsat)
                unsat.append(ci)
            else:
                where[ci] = -1

    def drop(ci):
        pos = where[ci]
        last = unsat.pop()
        if last != ci:
            unsat[pos] = last
            where[last] = pos
        where[ci] = -1

    def breaks(v):
        lit = v if value[v] else -v
        return sum(1 for ci in occurs[lit] if true_count[ci] == 1)

    def flip(v):
        now_true = -v if value[v] else v
        value[v] = not value[v]
        for ci in occurs[now_true]:
            true_count[ci] += 1
            if true_count[ci] == 1:
                drop(ci)
        for ci in occurs[-now_true]:
            true_count[ci] -= 1
            if true_count[ci] == 0:
                where[ci] = len(unsat)
                unsat.append(ci)

    period = max(1, cfg.max_flips // 10)
    reset()
    best = len(unsat)
    trace = [(0, best)]
    flips = 0
    restarts = 0
    status = 'unknown'
    while True:
        if not unsat:
            status = 'sat'
            break
        if flips >= cfg.max_flips:
            break
        if flips & 1023 == 0 and flips:
            if time.monotonic() > deadline or (stop is not None and stop.is_set()):
                break
        if flips and flips % period == 0:
            reset()
            restarts += 1
            if len(unsat) < best:
                best = len(unsat)
                trace.append((flips, best))
            if not unsat:
                continue

        clause = clauses[unsat[rng.randrange(len(unsat))]]
        scored = [(breaks(abs(lit)), abs(lit)) for lit in clause]
        low = min(b for b, _ in scored)
        if low > 0 and rng.random() < cfg.noise:
            var = abs(clause[rng.randrange(len(clause))])
        else:
            var = rng.choice([v for b, v in scored if b == low])
        flip(var)
        flips += 1
        if len(unsat) < best:
            best = len(unsat)
            trace.append((flips, best))

    elapsed = time.monotonic() - start
    if status == 'sat':
        best = 0
        if trace[-1][1] != 0:
            trace.append((flips, 0))
    stats = {'flips': flips, 'restarts': restarts, 'time': elapsed, 'best_trace': trace,
             'seed': cfg.seed, 'noise': cfg.noise}
    logger.info("walksat: %s after %d flips, best_unsat=%d, %.2fs", status, flips, best, elapsed)
    model = [v if value[v] else -v for v in range(1, n + 1)] if status == 'sat' else None
    return SolveOutcome(status, model, best, stats, 'walksat')
