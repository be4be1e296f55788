# Shared drawing helpers for Grid Coloring Lab

from typing import List, Optional, Tuple

# Light fills for colors 1..8
DEFAULT_PALETTE = [
    '#e41a1c',  # red
    '#377eb8',  # blue
    '#4daf4a',  # green
    '#ffd92f',  # yellow
    '#984ea3',  # purple
    '#ff7f00',  # orange
    '#a65628',  # brown
    '#999999',  # grey
]

SYMBOLS = '123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ'


def color_symbol(color: int) -> str:
    """Digit for colors 1..9, then letters."""
    return SYMBOLS[color - 1]


def symbol_color(symbol: str) -> int:
    return SYMBOLS.index(symbol.upper()) + 1


def overlay_lines(length: int, subgrid: int, midgrid: Optional[int] = None) -> Tuple[List[int], List[int]]:
    """
    Interior boundary offsets along one axis.

    Returns
    -------
    thin : list of int
        Multiples of the subgrid size that are not midgrid boundaries.
    thick : list of int
        Multiples of the midgrid size.
    """
    thick = list(range(midgrid, length, midgrid)) if midgrid else []
    thin = [p for p in range(subgrid, length, subgrid) if p not in thick]
    return thin, thick
