# Conflict-driven clause learning engine

import heapq
import logging
import random
import time
from typing import Iterable, List, Optional

from core.encoder import CnfFormula
from .config import SolveConfig, SolveOutcome

logger = logging.getLogger(__name__)

TRUE, FALSE, UNDEF = 1, -1, 0

VAR_DECAY = 0.95
CLAUSE_DECAY = 0.999
LEARNT_FLOOR = 10_000


class CdclSolver:
    """
    Two-watched-literal CDCL solver over DIMACS integer literals.

    Per-literal tables are Python lists of size 2n+1 indexed directly by
    the signed literal: negative literals land in the upper half through
    Python's negative indexing, positive ones in the lower half.

    Branching uses VSIDS activities in a lazy binary heap, saved phases
    (initially False) and first-UIP learning. Restarts follow a geometric
    schedule. Learned clauses are only trimmed once more than 10,000 are
    held, keeping the more active half.

    Clauses can be added between calls to solve(), which is how
    enumeration blocks found solutions without rebuilding the solver.
    """

    def __init__(self, num_vars: int, clauses: Iterable[Iterable[int]] = (), seed: int = 0,
                 restart_first: int = 100, restart_factor: float = 1.5):
        n = num_vars
        self.num_vars = n
        self.clauses: List[List[int]] = []
        self.learnt: List[bool] = []
        self.clause_act: List[float] = []
        self.watches: List[List[int]] = [[] for _ in range(2 * n + 1)]
        self.val: List[int] = [UNDEF] * (2 * n + 1)
        self.level: List[int] = [0] * (n + 1)
        self.reason: List[int] = [-1] * (n + 1)
        self.phase: List[bool] = [False] * (n + 1)
        self.seen: List[bool] = [False] * (n + 1)
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.ok = True
        self._model: List[int] = []

        rng = random.Random(seed)
        # tiny seeded jitter so different seeds break activity ties differently
        self.activity: List[float] = [0.0] + [rng.random() * 1e-5 for _ in range(n)]
        self.var_inc = 1.0
        self.cla_inc = 1.0
        self.heap = [(-self.activity[v], v) for v in range(1, n + 1)]
        heapq.heapify(self.heap)

        self.restart_first = restart_first
        self.restart_factor = restart_factor
        self.max_learnts = LEARNT_FLOOR
        self.num_learnts = 0
        self.stats = {'conflicts': 0, 'decisions': 0, 'propagations': 0,
                      'restarts': 0, 'learned': 0, 'reductions': 0}

        for clause in clauses:
            if not self.add_clause(clause):
                break

    # ------------------------------------------------------------------
    # assignment

    def _assign(self, lit: int, reason: int) -> None:
        v = lit if lit > 0 else -lit
        self.val[lit] = TRUE
        self.val[-lit] = FALSE
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _cancel_until(self, level: int) -> None:
        if len(self.trail_lim) <= level:
            return
        stop = self.trail_lim[level]
        val, phase, act, heap = self.val, self.phase, self.activity, self.heap
        for lit in reversed(self.trail[stop:]):
            v = lit if lit > 0 else -lit
            val[lit] = UNDEF
            val[-lit] = UNDEF
            phase[v] = lit > 0
            heapq.heappush(heap, (-act[v], v))
        del self.trail[stop:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    @property
    def decision_level(self) -> int:
        return len(self.trail_lim)

    # ------------------------------------------------------------------
    # clauses

    def _attach(self, lits: List[int], learnt: bool) -> int:
        ci = len(self.clauses)
        self.clauses.append(lits)
        self.learnt.append(learnt)
        self.clause_act.append(0.0)
        self.watches[lits[0]].append(ci)
        self.watches[lits[1]].append(ci)
        return ci

    def add_clause(self, clause: Iterable[int]) -> bool:
        """
        Add a problem clause at decision level 0.

        Returns False once the formula is known to be unsatisfiable.
        """
        if not self.ok:
            return False
        self._cancel_until(0)
        lits: List[int] = []
        for lit in dict.fromkeys(int(x) for x in clause):
            if -lit in lits or self.val[lit] == TRUE:
                return True
            if self.val[lit] == UNDEF:
                lits.append(lit)
        if not lits:
            self.ok = False
        elif len(lits) == 1:
            self._assign(lits[0], -1)
            self.ok = self._propagate() is None
        else:
            self._attach(lits, learnt=False)
        return self.ok

    def _propagate(self) -> Optional[int]:
        """Unit propagation; returns a conflicting clause index or None."""
        val, clauses, watches, trail = self.val, self.clauses, self.watches, self.trail
        props = 0
        while self.qhead < len(trail):
            false_lit = -trail[self.qhead]
            self.qhead += 1
            props += 1
            ws = watches[false_lit]
            kept: List[int] = []
            watches[false_lit] = kept
            for pos, ci in enumerate(ws):
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if val[first] == TRUE:
                    kept.append(ci)
                    continue
                for k in range(2, len(c)):
                    lit = c[k]
                    if val[lit] != FALSE:
                        c[1], c[k] = lit, false_lit
                        watches[lit].append(ci)
                        break
                else:
                    kept.append(ci)
                    if val[first] == FALSE:
                        kept.extend(ws[pos + 1:])
                        self.qhead = len(trail)
                        self.stats['propagations'] += props
                        return ci
                    self._assign(first, ci)
        self.stats['propagations'] += props
        return None

    # ------------------------------------------------------------------
    # learning

    def _bump_var(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for i in range(1, self.num_vars + 1):
                act[i] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-act[u], u) for u in range(1, self.num_vars + 1) if self.val[u] == UNDEF]
            heapq.heapify(self.heap)
        elif self.val[v] == UNDEF:
            heapq.heappush(self.heap, (-act[v], v))

    def _bump_clause(self, ci: int) -> None:
        if self.learnt[ci]:
            self.clause_act[ci] += self.cla_inc
            if self.clause_act[ci] > 1e20:
                self.clause_act = [a * 1e-20 for a in self.clause_act]
                self.cla_inc *= 1e-20

    def _analyze(self, confl: int):
        """First-UIP conflict analysis; returns (learnt clause, backjump level)."""
        seen, level, reason, trail = self.seen, self.level, self.reason, self.trail
        current = self.decision_level
        learnt: List[int] = [0]
        counter = 0
        p = 0
        idx = len(trail) - 1
        while True:
            self._bump_clause(confl)
            c = self.clauses[confl]
            for q in (c if p == 0 else c[1:]):
                v = q if q > 0 else -q
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    self._bump_var(v)
                    if level[v] >= current:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(trail[idx])]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            pv = abs(p)
            confl = reason[pv]
            seen[pv] = False
            counter -= 1
            if counter == 0:
                break
        learnt[0] = -p
        for q in learnt[1:]:
            seen[abs(q)] = False

        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda i: level[abs(learnt[i])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[abs(learnt[1])]

    def _record(self, learnt: List[int]) -> None:
        if len(learnt) == 1:
            self._assign(learnt[0], -1)
            return
        ci = self._attach(learnt, learnt=True)
        self.num_learnts += 1
        self.stats['learned'] += 1
        self._bump_clause(ci)
        self._assign(learnt[0], ci)

    def _reduce_db(self) -> None:
        """Drop the less active half of the learned clauses (level 0 only)."""
        learnt_ids = [ci for ci, is_learnt in enumerate(self.learnt) if is_learnt and len(self.clauses[ci]) > 2]
        learnt_ids.sort(key=lambda ci: self.clause_act[ci])
        doomed = set(learnt_ids[:len(learnt_ids) // 2])
        clauses, learnt, acts = [], [], []
        for ci, c in enumerate(self.clauses):
            if ci not in doomed:
                clauses.append(c)
                learnt.append(self.learnt[ci])
                acts.append(self.clause_act[ci])
        self.clauses, self.learnt, self.clause_act = clauses, learnt, acts
        self.watches = [[] for _ in range(2 * self.num_vars + 1)]
        for ci, c in enumerate(clauses):
            self.watches[c[0]].append(ci)
            self.watches[c[1]].append(ci)
        # level-0 reasons are never inspected by analysis
        self.reason = [-1] * (self.num_vars + 1)
        self.num_learnts -= len(doomed)
        self.max_learnts = int(self.max_learnts * 1.1)
        self.stats['reductions'] += 1
        logger.debug("Clause database reduced by %d learned clauses", len(doomed))

    # ------------------------------------------------------------------
    # search

    def _pick_branch(self) -> int:
        if len(self.heap) > 8 * self.num_vars + 1024:
            self.heap = [(-self.activity[v], v) for v in range(1, self.num_vars + 1)
                         if self.val[v] == UNDEF]
            heapq.heapify(self.heap)
        heap, val, act = self.heap, self.val, self.activity
        while heap:
            neg_act, v = heapq.heappop(heap)
            if val[v] == UNDEF and -neg_act == act[v]:
                return v if self.phase[v] else -v
        return 0

    def solve(self, timeout: Optional[float] = None, stop=None) -> str:
        """
        Search for a model.

        Parameters
        ----------
        timeout : float, optional
            Seconds before giving up with 'unknown'.
        stop : object with is_set(), optional
            Cooperative cancellation flag (e.g. a multiprocessing Event).

        Returns
        -------
        str
            'sat', 'unsat' or 'unknown'. After 'sat', model() returns the
            assignment.
        """
        if not self.ok:
            return 'unsat'
        deadline = None if timeout is None else time.monotonic() + timeout
        self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return 'unsat'

        restart_limit = float(self.restart_first)
        since_restart = 0
        ticks = 0
        stats = self.stats
        while True:
            ticks += 1
            if ticks & 255 == 0:
                if deadline is not None and time.monotonic() > deadline:
                    self._cancel_until(0)
                    return 'unknown'
                if stop is not None and stop.is_set():
                    self._cancel_until(0)
                    return 'unknown'

            confl = self._propagate()
            if confl is not None:
                stats['conflicts'] += 1
                since_restart += 1
                if self.decision_level == 0:
                    self.ok = False
                    return 'unsat'
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                self._record(learnt)
                self.var_inc /= VAR_DECAY
                self.cla_inc /= CLAUSE_DECAY
                continue

            if since_restart >= restart_limit:
                self._cancel_until(0)
                since_restart = 0
                restart_limit *= self.restart_factor
                stats['restarts'] += 1
                if self.num_learnts > self.max_learnts:
                    self._reduce_db()
                continue

            lit = self._pick_branch()
            if lit == 0:
                self._model = [v if self.val[v] == TRUE else -v for v in range(1, self.num_vars + 1)]
                self._cancel_until(0)
                return 'sat'
            stats['decisions'] += 1
            self.trail_lim.append(len(self.trail))
            self._assign(lit, -1)

    def model(self) -> List[int]:
        return list(self._model)


def solve_cdcl(f: CnfFormula, cfg: SolveConfig, stop=None) -> SolveOutcome:
    """Run the CDCL engine on a formula under a SolveConfig."""
    start = time.monotonic()
    solver = CdclSolver(f.num_vars, f.clauses, seed=cfg.seed,
                        restart_first=cfg.restart_first, restart_factor=cfg.restart_factor)
    status = solver.solve(timeout=cfg.timeout, stop=stop)
    stats = dict(solver.stats, time=time.monotonic() - start)
    logger.info("cdcl: %s after %d conflicts, %.2fs", status, stats['conflicts'], stats['time'])
    model = solver.model() if status == 'sat' else None
    return SolveOutcome(status, model, None, stats, 'cdcl')
