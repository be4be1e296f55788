# Solving engines for Grid Coloring Lab

from .config import SolveConfig, SolveOutcome, MODES
from .runner import solve

# Engines
from .cdcl import CdclSolver, solve_cdcl
from .walksat import walksat
from .portfolio import solve_portfolio, portfolio_plan
from .external import solve_external

# Enumeration
from .enumeration import (
    ColoringEnumerator,
    Enumeration,
    enumerate_colorings,
    iter_colorings
)

__all__ = [
    'SolveConfig',
    'SolveOutcome',
    'MODES',
    'solve',
    # Engines
    'CdclSolver',
    'solve_cdcl',
    'walksat',
    'solve_portfolio',
    'portfolio_plan',
    'solve_external',
    # Enumeration
    'ColoringEnumerator',
    'Enumeration',
    'enumerate_colorings',
    'iter_colorings'
]
