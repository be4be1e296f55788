# Grid, coloring and rectangle oracle for Grid Coloring Lab

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ShapeError


@dataclass(frozen=True)
class GridSpec:
    """
    Dimensions of a coloring problem.

    Parameters
    ----------
    rows : int
        Number of rows m (>= 1).
    cols : int
        Number of columns n (>= 1).
    colors : int
        Number of colors k (>= 1).
    """
    rows: int
    cols: int
    colors: int

    def __post_init__(self):
        for name in ('rows', 'cols', 'colors'):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ShapeError(f"GridSpec.{name} must be a positive integer, got {value!r}")

    @property
    def cells(self) -> int:
        return self.rows * self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __str__(self):
        return f"G({self.rows},{self.cols},{self.colors})"


class Coloring:
    """
    An m x n assignment of colors 1..k, immutable once built.

    The cells are held as a read-only int8 numpy array of shape (m, n).
    Two colorings compare equal when their specs and cells agree.
    """

    __slots__ = ('spec', '_grid')

    def __init__(self, spec: GridSpec, cells):
        arr = np.asarray(cells)
        if arr.size != spec.cells:
            raise ShapeError(f"{spec} needs {spec.cells} cells, got {arr.size}")
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            if not np.all(np.equal(np.mod(arr, 1), 0)):
                raise ShapeError("Cell colors must be integers")
        grid = arr.astype(np.int16).reshape(spec.rows, spec.cols)
        if grid.min() < 1 or grid.max() > spec.colors:
            raise ShapeError(f"Cell colors must lie in 1..{spec.colors}")
        grid = grid.astype(np.int8)
        grid.setflags(write=False)
        self.spec = spec
        self._grid = grid

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], colors: Optional[int] = None) -> 'Coloring':
        """Build from a list of rows; k defaults to the largest color used."""
        arr = np.asarray(rows)
        if arr.ndim != 2:
            raise ShapeError("Rows must form a rectangular 2D table")
        k = int(arr.max()) if colors is None else colors
        return cls(GridSpec(arr.shape[0], arr.shape[1], k), arr)

    @classmethod
    def constant(cls, spec: GridSpec, color: int = 1) -> 'Coloring':
        return cls(spec, np.full((spec.rows, spec.cols), color))

    @property
    def grid(self) -> np.ndarray:
        """Read-only (m, n) array of colors."""
        return self._grid

    @property
    def cells(self) -> Tuple[int, ...]:
        """Row-major tuple of colors."""
        return tuple(int(v) for v in self._grid.ravel())

    def to_rows(self) -> List[List[int]]:
        return self._grid.astype(int).tolist()

    def transpose(self) -> 'Coloring':
        spec = GridSpec(self.spec.cols, self.spec.rows, self.spec.colors)
        return Coloring(spec, self._grid.T)

    def with_colors(self, colors: int) -> 'Coloring':
        """Same cells under a larger palette size."""
        return Coloring(GridSpec(self.spec.rows, self.spec.cols, colors), self._grid)

    def key(self) -> bytes:
        return self._grid.tobytes()

    def __getitem__(self, index):
        return int(self._grid[index])

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self._grid, other._grid)

    def __hash__(self):
        return hash((self.spec, self.key()))

    def __repr__(self):
        return f"Coloring({self.spec}, {self.to_rows()})"


@dataclass(frozen=True)
class RectangleWitness:
    """
    Four same-colored cells at the corners of a rectangle.

    Rows and columns are 1-based, with row1 < row2 and col1 < col2.
    """
    row1: int
    row2: int
    col1: int
    col2: int
    color: int

    def corners(self) -> List[Tuple[int, int]]:
        return [(self.row1, self.col1), (self.row1, self.col2),
                (self.row2, self.col1), (self.row2, self.col2)]

    def __str__(self):
        return (f"rows {self.row1},{self.row2} cols {self.col1},{self.col2} "
                f"color {self.color}")


def color_row_bits(grid: np.ndarray, color: int) -> List[int]:
    """
    Encode each row's cells of one color as an integer bitset.

    Bit j of entry i is set when cell (i, j) has the given color.
    """
    mask = np.packbits(grid == color, axis=1, bitorder='little')
    return [int.from_bytes(row.tobytes(), 'little') for row in mask]


def _two_lowest_bits(x: int) -> Tuple[int, int]:
    low = x & -x
    rest = x ^ low
    return low.bit_length() - 1, (rest & -rest).bit_length() - 1


def find_monochromatic_rectangle(c: Coloring) -> Optional[RectangleWitness]:
    """
    Search a coloring for a monochromatic rectangle.

    Rows are packed into per-color bitsets; two rows sharing two columns
    of the same color close a rectangle.

    Parameters
    ----------
    c : Coloring
        Coloring to check.

    Returns
    -------
    RectangleWitness or None
        The first rectangle found (by color, then row pair), or None if
        the coloring is rectangle-free.

    Examples
    --------
    >>> c = Coloring.from_rows([[1, 1], [1, 1]])
    >>> find_monochromatic_rectangle(c)
    RectangleWitness(row1=1, row2=2, col1=1, col2=2, color=1)
    """
    m = c.spec.rows
    if m < 2 or c.spec.cols < 2:
        return None
    for color in range(1, c.spec.colors + 1):
        bits = color_row_bits(c.grid, color)
        for r1 in range(m - 1):
            b1 = bits[r1]
            if b1 & (b1 - 1) == 0:
                continue
            for r2 in range(r1 + 1, m):
                common = b1 & bits[r2]
                if common.bit_count() >= 2:
                    c1, c2 = _two_lowest_bits(common)
                    return RectangleWitness(r1 + 1, r2 + 1, c1 + 1, c2 + 1, color)
    return None


def is_rectangle_free(c: Coloring) -> bool:
    return find_monochromatic_rectangle(c) is None


def iter_all_colorings(spec: GridSpec) -> Iterable[Coloring]:
    """Every k^(m*n) coloring of a (tiny) spec, in lexicographic order."""
    total = spec.colors ** spec.cells
    for code in range(total):
        digits = np.base_repr(code, base=spec.colors).zfill(spec.cells) if spec.colors > 1 \
            else '0' * spec.cells
        yield Coloring(spec, [int(ch, 36) + 1 for ch in digits])
