# Extending colorings with monochromatic stripe rows

from typing import Optional

import numpy as np

from .errors import LayoutError
from .grid import Coloring, GridSpec


def stripe_ready(c: Coloring, block: Optional[int] = None) -> bool:
    """
    True when no row repeats a color inside any column block and there
    are at most k blocks, so each stripe uses a color in one block only.

    Parameters
    ----------
    c : Coloring
        Candidate coloring.
    block : int, optional
        Width of the column blocks; defaults to k. Must divide n.
    """
    block = block or c.spec.colors
    if c.spec.cols % block or c.spec.cols // block > c.spec.colors:
        return False
    segments = c.grid.reshape(c.spec.rows, c.spec.cols // block, block)
    ordered = np.sort(segments, axis=2)
    return not np.any(ordered[:, :, 1:] == ordered[:, :, :-1])


def stripe_rows(k: int, blocks: int, block: int) -> np.ndarray:
    """k rows where row t paints column block j with color ((j + t) mod k) + 1."""
    t = np.arange(k)[:, None]
    j = np.arange(blocks)[None, :]
    return np.repeat((j + t) % k + 1, block, axis=1)


def extend_with_stripes(c: Coloring, block: Optional[int] = None) -> Coloring:
    """
    Append k monochromatic stripe rows below a coloring.

    Each new row is constant on every column block and the k new rows
    form a Latin square over the blocks, so two stripe rows never share
    a color in a column. A stripe meets an old row in at most one cell
    of its color as long as old rows never repeat a color inside a block.

    Parameters
    ----------
    c : Coloring
        Coloring with stripe_ready(c, block) true, e.g. a k^2 x k^2
        k-subgrid shift with every color once per subgrid row.
    block : int, optional
        Column block width; defaults to k.

    Returns
    -------
    Coloring
        The (m + k) x n coloring.

    Raises
    ------
    LayoutError
        If a row repeats a color inside a block, blocks do not tile n or
        there are more than k blocks.
    """
    k = c.spec.colors
    block = block or k
    if not stripe_ready(c, block):
        raise LayoutError(f"{c.spec} is not stripe-ready with {block}-column blocks")
    extra = stripe_rows(k, c.spec.cols // block, block)
    spec = GridSpec(c.spec.rows + k, c.spec.cols, k)
    return Coloring(spec, np.vstack([c.grid, extra]))
