# Shift-pattern layouts: subgrids, midgrids, partial shifts and diagonal equality

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import LayoutError, ShapeError
from .grid import Coloring, GridSpec
from .distribution import DistributionSet

logger = logging.getLogger(__name__)

DIRECTIONS = ('left', 'right', 'both')
DIAGONAL_MODES = ('none', 'diagonal', 'anti-diagonal', 'both')

# Accepted spellings on the command line and in recipe files
_DIRECTION_ALIASES = {'selector-both': 'both', 'selector': 'both'}
_DIAGONAL_ALIASES = {'diag': 'diagonal', 'anti': 'anti-diagonal', 'anti_diagonal': 'anti-diagonal'}


@dataclass(frozen=True)
class PatternLayout:
    """
    Shift-pattern streamlining applied to a grid.

    Parameters
    ----------
    subgrid : int
        Subgrid size z (>= 2). Subgrids tile the upper-left
        floor(m/z)*z by floor(n/z)*z region.
    direction : str
        'left', 'right', or 'both' (each subgrid picks one via selectors).
    midgrid : int, optional
        Midgrid size, a multiple of z. Subgrids inside a midgrid are
        shifted one level up with whole subgrids as units.
    partial_rows, partial_cols : int
        Leftover rows/columns (< z) that continue the pattern as the
        leading rows/columns of a virtual subgrid of a larger grid.
    diagonal : str
        'none', 'diagonal', 'anti-diagonal' or 'both'. Diagonal subgrids
        copy subgrid (0, 0); anti-diagonal ones copy subgrid (0, last).
    """
    subgrid: int
    direction: str = 'left'
    midgrid: Optional[int] = None
    partial_rows: int = 0
    partial_cols: int = 0
    diagonal: str = 'none'

    def __post_init__(self):
        direction = _DIRECTION_ALIASES.get(self.direction, self.direction)
        diagonal = _DIAGONAL_ALIASES.get(self.diagonal, self.diagonal)
        object.__setattr__(self, 'direction', direction)
        object.__setattr__(self, 'diagonal', diagonal)

        if self.subgrid < 2:
            raise LayoutError(f"Subgrid size must be at least 2, got {self.subgrid}")
        if direction not in DIRECTIONS:
            raise LayoutError(f"Unknown shift direction {self.direction!r}")
        if diagonal not in DIAGONAL_MODES:
            raise LayoutError(f"Unknown diagonal mode {self.diagonal!r}")
        if self.midgrid is not None and (self.midgrid < self.subgrid or self.midgrid % self.subgrid):
            raise LayoutError(f"Midgrid {self.midgrid} is not a multiple of subgrid {self.subgrid}")
        if not (0 <= self.partial_rows < self.subgrid and 0 <= self.partial_cols < self.subgrid):
            raise LayoutError("Partial rows and columns must lie in 0..z-1")
        if direction == 'both' and (self.midgrid or self.partial_rows or self.partial_cols
                                    or diagonal != 'none'):
            raise LayoutError("Selector (both-direction) layouts take no midgrid, partial or diagonal options")

    @property
    def step(self) -> int:
        """Rotation per row: +1 for right shifts, -1 for left shifts."""
        return 1 if self.direction == 'right' else -1

    def blocks(self, spec: GridSpec) -> Tuple[int, int]:
        """Number of fully tiled subgrid rows and columns."""
        return spec.rows // self.subgrid, spec.cols // self.subgrid

    def is_divisible(self, spec: GridSpec) -> bool:
        return spec.rows % self.subgrid == 0 and spec.cols % self.subgrid == 0

    def validate(self, spec: GridSpec) -> None:
        """Raise LayoutError when the layout does not fit the spec."""
        z = self.subgrid
        if spec.rows < z or spec.cols < z:
            raise LayoutError(f"Subgrid {z} does not fit in {spec}")
        if self.midgrid is not None and self.midgrid > min(spec.rows, spec.cols):
            raise LayoutError(f"Midgrid {self.midgrid} exceeds {spec}")
        if self.partial_rows > spec.rows - (spec.rows // z) * z:
            raise LayoutError(f"{spec} has fewer than {self.partial_rows} leftover rows")
        if self.partial_cols > spec.cols - (spec.cols // z) * z:
            raise LayoutError(f"{spec} has fewer than {self.partial_cols} leftover columns")

    def describe(self) -> str:
        parts = [f"z={self.subgrid}", self.direction]
        if self.midgrid:
            parts.append(f"midgrid={self.midgrid}")
        if self.partial_rows or self.partial_cols:
            parts.append(f"partial={self.partial_rows}x{self.partial_cols}")
        if self.diagonal != 'none':
            parts.append(f"diagonal={self.diagonal}")
        return ', '.join(parts)


def _node_index(spec: GridSpec, layout: PatternLayout):
    """
    Return a function mapping pattern coordinates to graph node ids.

    Real cells that carry the pattern keep their row-major index; pattern
    positions beyond the grid, or beyond the requested partial rows and
    columns, become virtual nodes numbered after the real ones.
    """
    z = layout.subgrid
    tr, tc = (spec.rows // z) * z, (spec.cols // z) * z
    ext_cols = tc + (z if layout.partial_cols else 0)
    base = spec.rows * spec.cols

    def index(r: np.ndarray, c: np.ndarray) -> np.ndarray:
        real = ((r < tr) | (r - tr < layout.partial_rows)) & ((c < tc) | (c - tc < layout.partial_cols))
        return np.where(real, r * spec.cols + c, base + r * ext_cols + c)

    ext_rows = tr + (z if layout.partial_rows else 0)
    return index, base + ext_rows * ext_cols


def _shift_edges(layout: PatternLayout, block_rows: int, block_cols: int) -> Tuple[np.ndarray, ...]:
    """Pattern coordinates (r, c) ~ (r0, c0) tying every subgrid row to its first row."""
    z, s = layout.subgrid, layout.step
    I, J, a, b = np.meshgrid(np.arange(block_rows), np.arange(block_cols),
                             np.arange(1, z), np.arange(z), indexing='ij')
    r = I * z + a
    c = J * z + (b + s * a) % z
    return r.ravel(), c.ravel(), (I * z).ravel(), (J * z + b).ravel()


def _midgrid_edges(spec: GridSpec, layout: PatternLayout) -> Tuple[np.ndarray, ...]:
    """Cells of shifted subgrids tied to the first subgrid row of each midgrid."""
    z, M, s = layout.subgrid, layout.midgrid, layout.step
    w = M // z
    P, Q = spec.rows // M, spec.cols // M
    p, q, a, b, u, v = np.meshgrid(np.arange(P), np.arange(Q), np.arange(1, w), np.arange(w),
                                   np.arange(z), np.arange(z), indexing='ij')
    r = (p * w + a) * z + u
    c = (q * w + (b + s * a) % w) * z + v
    r0 = (p * w) * z + u
    c0 = (q * w + b) * z + v
    return r.ravel(), c.ravel(), r0.ravel(), c0.ravel()


def _diagonal_edges(spec: GridSpec, layout: PatternLayout) -> Tuple[np.ndarray, ...]:
    """Cells of diagonal (anti-diagonal) subgrids tied to the corner subgrid."""
    z = layout.subgrid
    X, Y = layout.blocks(spec)
    steps = np.arange(1, min(X, Y))
    u, v = np.meshgrid(np.arange(z), np.arange(z), indexing='ij')
    edges = []
    if layout.diagonal in ('diagonal', 'both'):
        edges += [(i * z + u, i * z + v, u, v) for i in steps]
    if layout.diagonal in ('anti-diagonal', 'both'):
        edges += [(i * z + u, (Y - 1 - i) * z + v, u, (Y - 1) * z + v) for i in steps]
    if not edges:
        empty = np.zeros(0, dtype=int)
        return empty, empty, empty, empty
    return tuple(np.concatenate([e[k].ravel() for e in edges]) for k in range(4))


def cell_classes(spec: GridSpec, layout: Optional[PatternLayout]) -> np.ndarray:
    """
    Partition the cells of a grid into shift-identified classes.

    Parameters
    ----------
    spec : GridSpec
        Grid dimensions.
    layout : PatternLayout or None
        Layout whose equalities are applied. None, or a both-direction
        layout, leaves every cell in its own class.

    Returns
    -------
    numpy.ndarray
        (m, n) array of class ids 0..C-1. Ids are ordered by each class's
        smallest row-major cell, which also serves as its representative.
    """
    m, n = spec.rows, spec.cols
    if layout is None or layout.direction == 'both':
        return np.arange(m * n).reshape(m, n)
    layout.validate(spec)

    z = layout.subgrid
    X, Y = layout.blocks(spec)
    index, total = _node_index(spec, layout)

    edge_groups = [_shift_edges(layout, X + (1 if layout.partial_rows else 0),
                                Y + (1 if layout.partial_cols else 0))]
    if layout.midgrid and layout.midgrid > z:
        edge_groups.append(_midgrid_edges(spec, layout))
    if layout.diagonal != 'none':
        edge_groups.append(_diagonal_edges(spec, layout))

    src = np.concatenate([index(r, c) for r, c, _, _ in edge_groups])
    dst = np.concatenate([index(r0, c0) for _, _, r0, c0 in edge_groups])
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(total, total))
    _, labels = connected_components(graph, directed=False)

    real = labels[:m * n]
    # np.unique's first-occurrence index is the smallest real cell of each class
    uniq, first = np.unique(real, return_index=True)
    rank = np.empty(uniq.size, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(uniq.size)
    lookup = dict(zip(uniq.tolist(), rank.tolist()))
    classes = np.fromiter((lookup[x] for x in real.tolist()), dtype=np.int64, count=m * n)
    logger.debug("%s under %s: %d cell classes", spec, layout.describe(), uniq.size)
    return classes.reshape(m, n)


def class_members(classes: np.ndarray) -> Dict[int, List[Tuple[int, int]]]:
    """Map each class id to its (row, col) cells in row-major order."""
    members: Dict[int, List[Tuple[int, int]]] = {}
    for (i, j), cls in np.ndenumerate(classes):
        members.setdefault(int(cls), []).append((i, j))
    return members


def subgrid_first_row_classes(spec: GridSpec, layout: PatternLayout,
                              classes: np.ndarray) -> Dict[Tuple[int, int], List[int]]:
    """Class ids of the z first-row cells of every tiled subgrid (I, J)."""
    z = layout.subgrid
    X, Y = layout.blocks(spec)
    return {(I, J): [int(x) for x in classes[I * z, J * z:(J + 1) * z]]
            for I in range(X) for J in range(Y)}


def _is_shift(block: np.ndarray, step: int) -> bool:
    return all(np.array_equal(block[a], np.roll(block[0], step * a)) for a in range(1, block.shape[0]))


def subgrid_direction(c: Coloring, layout: PatternLayout, I: int, J: int) -> Optional[str]:
    """Return 'left', 'right' (right wins when both hold) or None for subgrid (I, J)."""
    z = layout.subgrid
    block = c.grid[I * z:(I + 1) * z, J * z:(J + 1) * z]
    if _is_shift(block, 1):
        return 'right'
    if _is_shift(block, -1):
        return 'left'
    return None


def matches_layout(c: Coloring, layout: PatternLayout) -> bool:
    """
    Test whether a coloring satisfies a shift-pattern layout.

    Right shift: cell (r0+d, c0 + (q+d) mod z) equals cell (r0, c0+q)
    inside every subgrid; left shift rotates the other way. Midgrid,
    partial and diagonal equalities are checked as well. For 'both',
    every tiled subgrid must be a left or a right shift.

    Raises
    ------
    LayoutError
        If the layout does not fit the coloring's spec.
    """
    layout.validate(c.spec)
    if layout.direction == 'both':
        X, Y = layout.blocks(c.spec)
        return all(subgrid_direction(c, layout, I, J) is not None
                   for I in range(X) for J in range(Y))

    classes = cell_classes(c.spec, layout).ravel()
    colors = c.grid.ravel().astype(np.int64)
    count = int(classes.max()) + 1
    lo = np.full(count, np.iinfo(np.int64).max)
    hi = np.full(count, np.iinfo(np.int64).min)
    np.minimum.at(lo, classes, colors)
    np.maximum.at(hi, classes, colors)
    return bool(np.array_equal(lo, hi))


def extract_distribution(c: Coloring, layout: PatternLayout) -> DistributionSet:
    """
    Per-subgrid color counts divided by z.

    Parameters
    ----------
    c : Coloring
        A shift-pattern coloring whose grid is fully tiled by subgrids.
    layout : PatternLayout
        The layout it follows.

    Returns
    -------
    DistributionSet
        k matrices of shape (m/z, n/z).

    Raises
    ------
    LayoutError
        If m or n is not divisible by z.
    ShapeError
        If a count is not divisible by z (the coloring is not a shift pattern).
    """
    z = layout.subgrid
    if not layout.is_divisible(c.spec):
        raise LayoutError(f"{c.spec} is not tiled by {z}-subgrids")
    X, Y = layout.blocks(c.spec)
    blocks = c.grid.reshape(X, z, Y, z)
    counts = np.stack([(blocks == color).sum(axis=(1, 3)) for color in range(1, c.spec.colors + 1)])
    if np.any(counts % z):
        raise ShapeError("Subgrid color counts are not multiples of z; coloring is not a shift pattern")
    return DistributionSet(counts // z, z)
