# All-solutions enumeration by blocking clauses

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

from core.encoder import CnfFormula, VarMap, coloring_literals, decode_model
from core.grid import Coloring, GridSpec
from .cdcl import CdclSolver
from .config import SolveConfig

logger = logging.getLogger(__name__)


@dataclass
class Enumeration:
    """Colorings found; complete is True only when the search ended in unsat."""
    colorings: List[Coloring]
    complete: bool
    stats: Dict[str, Any] = field(default_factory=dict)

    def __iter__(self):
        return iter(self.colorings)

    def __len__(self):
        return len(self.colorings)


class ColoringEnumerator:
    """
    Stream the distinct colorings of an encoding.

    After every model the coloring is decoded and a blocking clause over
    the cell classes is added to the live solver, so selector and counter
    variables never split one coloring into several solutions.
    """

    def __init__(self, f: CnfFormula, vm: VarMap, spec: Optional[GridSpec] = None,
                 cfg: Optional[SolveConfig] = None):
        self.vm = vm
        self.spec = spec or vm.spec
        self.cfg = cfg or SolveConfig()
        self.solver = CdclSolver(f.num_vars, f.clauses, seed=self.cfg.seed,
                                 restart_first=self.cfg.restart_first,
                                 restart_factor=self.cfg.restart_factor)
        self.count = 0
        self.complete = False
        self.timed_out = False

    def __iter__(self) -> Iterator[Coloring]:
        return self.run()

    def run(self, limit: Optional[int] = None, stop=None) -> Iterator[Coloring]:
        deadline = time.monotonic() + self.cfg.timeout
        while limit is None or self.count < limit:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                self.timed_out = True
                return
            status = self.solver.solve(timeout=remaining, stop=stop)
            if status == 'unsat':
                self.complete = True
                return
            if status == 'unknown':
                self.timed_out = True
                return
            coloring = decode_model(self.solver.model(), self.vm, self.spec)
            self.count += 1
            self.solver.add_clause([-lit for lit in coloring_literals(self.vm, coloring)])
            yield coloring


def iter_colorings(f: CnfFormula, vm: VarMap, spec: Optional[GridSpec] = None,
                   limit: Optional[int] = None, cfg: Optional[SolveConfig] = None) -> Iterator[Coloring]:
    """Generator form of enumerate_colorings."""
    return ColoringEnumerator(f, vm, spec, cfg).run(limit)


def enumerate_colorings(f: CnfFormula, vm: VarMap, spec: Optional[GridSpec] = None,
                        limit: Optional[int] = None, cfg: Optional[SolveConfig] = None) -> Enumeration:
    """
    Collect pairwise-distinct colorings until unsat, the limit, or the timeout.

    Parameters
    ----------
    f : CnfFormula
        Encoded problem; not modified.
    vm : VarMap
        Variable map of the encoding.
    spec : GridSpec, optional
        Defaults to vm.spec.
    limit : int, optional
        Stop after this many colorings.
    cfg : SolveConfig, optional
        Seed, restart policy and overall timeout.

    Returns
    -------
    Enumeration
        complete is True when the final solver call proved unsat, in which
        case the colorings are exactly all colorings of the encoding.
    """
    start = time.monotonic()
    enumerator = ColoringEnumerator(f, vm, spec, cfg)
    colorings = list(enumerator.run(limit))
    stats = dict(enumerator.solver.stats, time=time.monotonic() - start,
                 timed_out=enumerator.timed_out)
    logger.info("Enumerated %d colorings of %s (complete=%s) in %.2fs",
                len(colorings), enumerator.spec, enumerator.complete, stats['time'])
    return Enumeration(colorings, enumerator.complete, stats)
