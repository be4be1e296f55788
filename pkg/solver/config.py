# Solver configuration and outcome records

from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, List, Optional

from core.errors import GridLabError

MODES = ('cdcl', 'local-search', 'portfolio')
_MODE_ALIASES = {'walksat': 'local-search', 'local': 'local-search', 'sls': 'local-search'}

STATUSES = ('sat', 'unsat', 'unknown')


@dataclass(frozen=True)
class SolveConfig:
    """
    Engine settings shared by every solving entry point.

    Parameters
    ----------
    seed : int
        Seed for every random choice (activity jitter, walk picks).
    timeout : float
        Wall-clock limit in seconds.
    mode : str
        'cdcl', 'local-search' (alias 'walksat') or 'portfolio'.
    max_flips : int
        Flip budget for local search; a fresh random assignment is drawn
        every max_flips/10 flips.
    noise : float
        Random-walk probability for local search.
    restart_first : int
        Conflicts before the first CDCL restart.
    restart_factor : float
        Growth factor of the restart interval.
    portfolio_width : int
        Worker processes in portfolio mode (one CDCL, the rest local search).
    symmetry_breaking : bool
        Callers that only need sat/unsat add symmetry-breaking clauses to
        the encoding. Never honored by enumeration.
    """
    seed: int = 0
    timeout: float = 60.0
    mode: str = 'cdcl'
    max_flips: int = 1_000_000
    noise: float = 0.5
    restart_first: int = 100
    restart_factor: float = 1.5
    portfolio_width: int = 4
    symmetry_breaking: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'mode', _MODE_ALIASES.get(self.mode, self.mode))
        if self.mode not in MODES:
            raise GridLabError(f"Unknown solver mode {self.mode!r}")
        if self.timeout <= 0:
            raise GridLabError("timeout must be positive")
        if self.max_flips <= 0:
            raise GridLabError("max_flips must be positive")
        if not 0.0 <= self.noise <= 1.0:
            raise GridLabError("noise must lie in [0, 1]")
        if self.restart_first < 1 or self.restart_factor < 1.0:
            raise GridLabError("restart policy needs restart_first >= 1 and restart_factor >= 1")
        if self.portfolio_width < 1:
            raise GridLabError("portfolio_width must be at least 1")

    def with_(self, **changes) -> 'SolveConfig':
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SolveOutcome:
    """
    Result of one solver run.

    model, when present, lists one signed literal per variable (DIMACS
    style, index v-1 holds +v or -v).
    """
    status: str
    model: Optional[List[int]] = None
    best_unsat: Optional[int] = None
    stats: Dict[str, Any] = field(default_factory=dict)
    engine: str = ''

    def __post_init__(self):
        if self.status not in STATUSES:
            raise GridLabError(f"Unknown status {self.status!r}")
        if self.status == 'sat' and self.model is None:
            raise GridLabError("A sat outcome needs a model")

    @property
    def decisive(self) -> bool:
        return self.status != 'unknown'

    def __str__(self):
        extra = '' if self.best_unsat is None else f", best_unsat={self.best_unsat}"
        return f"{self.status} ({self.engine}{extra})"
