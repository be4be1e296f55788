# Matplotlib figures of colorings

import logging
from typing import Optional, Sequence

try:
    from ..core.errors import PaletteError
    from ..core.grid import Coloring
    from ..core.layout import PatternLayout
    from .plot_utils import DEFAULT_PALETTE, overlay_lines
except ImportError:
    import sys
    import os
    sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
    from core.errors import PaletteError
    from core.grid import Coloring
    from core.layout import PatternLayout
    from visualization.plot_utils import DEFAULT_PALETTE, overlay_lines

logger = logging.getLogger(__name__)


def plot_coloring(c: Coloring, overlay: Optional[PatternLayout] = None,
                  palette: Sequence[str] = DEFAULT_PALETTE, ax=None, title: str = ''):
    """
    Draw a coloring as a grid of filled cells.

    Parameters
    ----------
    c : Coloring
        Coloring to draw.
    overlay : PatternLayout, optional
        Subgrid boundaries drawn thin, midgrid boundaries thick.
    palette : sequence of str
        Fill colors for 1..k.
    ax : matplotlib.axes.Axes, optional
        Target axes; a new figure is created when omitted.
    title : str, optional
        Axes title.

    Returns
    -------
    matplotlib.axes.Axes
    """
    try:
        import matplotlib.pyplot as plt
        from matplotlib.colors import ListedColormap
    except ImportError:
        raise ImportError("matplotlib is required for PNG figures. Install with: pip install matplotlib")

    k = c.spec.colors
    if len(palette) < k:
        raise PaletteError(f"Palette has {len(palette)} entries for {k} colors")
    m, n = c.spec.rows, c.spec.cols
    if ax is None:
        _, ax = plt.subplots(figsize=(max(2.0, n * 0.3), max(2.0, m * 0.3)))

    cmap = ListedColormap(list(palette[:k]))
    ax.pcolormesh(c.grid - 1, cmap=cmap, vmin=-0.5, vmax=k - 0.5, edgecolors='white', linewidth=0.5)
    if overlay is not None:
        for lines, width in zip(overlay_lines(m, overlay.subgrid, overlay.midgrid), (1.5, 3.0)):
            for r in lines:
                ax.axhline(r, color='black', linewidth=width)
        for lines, width in zip(overlay_lines(n, overlay.subgrid, overlay.midgrid), (1.5, 3.0)):
            for col in lines:
                ax.axvline(col, color='black', linewidth=width)
    ax.set_xlim(0, n)
    ax.set_ylim(m, 0)
    ax.set_aspect('equal')
    ax.axis('off')
    if title:
        ax.set_title(title)
    return ax


def save_png(c: Coloring, path: str, overlay: Optional[PatternLayout] = None,
             palette: Sequence[str] = DEFAULT_PALETTE, dpi: int = 150) -> str:
    """Write plot_coloring's figure to a PNG file and return the path."""
    import matplotlib.pyplot as plt

    ax = plot_coloring(c, overlay, palette)
    ax.figure.savefig(path, dpi=dpi, bbox_inches='tight')
    plt.close(ax.figure)
    logger.info("Figure saved to %s", path)
    return path
