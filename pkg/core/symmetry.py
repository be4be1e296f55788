# Grid isomorphism group: row/column/color permutations and transposition

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import ShapeError
from .grid import Coloring, GridSpec


def _compose(outer: Tuple[int, ...], inner: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(outer[i] for i in inner)


def _invert(perm: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@dataclass(frozen=True)
class IsoElement:
    """
    One element of the grid isomorphism group.

    The coloring is transposed first (square grids only), then row i
    moves to row_perm[i], column j to col_perm[j], and color c becomes
    color_perm[c-1] + 1. All permutations are 0-based tuples.
    """
    row_perm: Tuple[int, ...]
    col_perm: Tuple[int, ...]
    color_perm: Tuple[int, ...]
    transpose: bool = False

    def __post_init__(self):
        for name in ('row_perm', 'col_perm', 'color_perm'):
            perm = tuple(int(p) for p in getattr(self, name))
            if sorted(perm) != list(range(len(perm))):
                raise ShapeError(f"{name} is not a permutation: {perm}")
            object.__setattr__(self, name, perm)
        if self.transpose and len(self.row_perm) != len(self.col_perm):
            raise ShapeError("Transposition needs a square grid")

    @classmethod
    def identity(cls, spec: GridSpec) -> 'IsoElement':
        return cls(tuple(range(spec.rows)), tuple(range(spec.cols)), tuple(range(spec.colors)))

    @classmethod
    def random(cls, spec: GridSpec, rng: Optional[np.random.Generator] = None) -> 'IsoElement':
        rng = rng if rng is not None else np.random.default_rng()
        flip = bool(spec.is_square and rng.integers(2))
        return cls(tuple(rng.permutation(spec.rows)), tuple(rng.permutation(spec.cols)),
                   tuple(rng.permutation(spec.colors)), flip)

    def fits(self, spec: GridSpec) -> bool:
        return (len(self.row_perm), len(self.col_perm), len(self.color_perm)) == \
            (spec.rows, spec.cols, spec.colors)

    def compose(self, inner: 'IsoElement') -> 'IsoElement':
        """The element acting as `inner` followed by `self`."""
        if self.transpose:
            rows = _compose(self.row_perm, inner.col_perm)
            cols = _compose(self.col_perm, inner.row_perm)
        else:
            rows = _compose(self.row_perm, inner.row_perm)
            cols = _compose(self.col_perm, inner.col_perm)
        return IsoElement(rows, cols, _compose(self.color_perm, inner.color_perm),
                          self.transpose != inner.transpose)

    def inverse(self) -> 'IsoElement':
        rows, cols = _invert(self.row_perm), _invert(self.col_perm)
        if self.transpose:
            rows, cols = cols, rows
        return IsoElement(rows, cols, _invert(self.color_perm), self.transpose)


def apply_isomorphism(c: Coloring, g: IsoElement) -> Coloring:
    """
    Act on a coloring with a group element.

    Output cell (row_perm[i], col_perm[j]) carries the permuted color of
    cell (i, j) of the (optionally transposed) input.

    Raises
    ------
    ShapeError
        If the element's permutation sizes do not match the coloring.
    """
    if not g.fits(c.spec):
        raise ShapeError(f"Group element does not act on {c.spec}")
    src = c.grid.T if g.transpose else c.grid
    out = np.empty_like(src)
    out[np.ix_(g.row_perm, g.col_perm)] = src
    recolor = np.asarray((0,) + tuple(p + 1 for p in g.color_perm), dtype=np.int8)
    return Coloring(c.spec, recolor[out])
