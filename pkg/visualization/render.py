# Text and SVG rendering of colorings

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

try:
    from ..core.errors import PaletteError
    from ..core.grid import Coloring
    from ..core.layout import PatternLayout
    from .plot_utils import DEFAULT_PALETTE, color_symbol, overlay_lines
except ImportError:
    import sys
    import os
    sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
    from core.errors import PaletteError
    from core.grid import Coloring
    from core.layout import PatternLayout
    from visualization.plot_utils import DEFAULT_PALETTE, color_symbol, overlay_lines

FORMATS = ('ascii', 'svg')


@dataclass
class RenderOptions:
    """
    Parameters
    ----------
    format : str
        'ascii' or 'svg'.
    palette : list of str
        Fill colors for 1..k (svg).
    overlay : PatternLayout, optional
        Draw subgrid boundaries, and heavier midgrid boundaries.
    cell_size : int
        Cell edge in pixels (svg).
    """
    format: str = 'ascii'
    palette: List[str] = field(default_factory=lambda: list(DEFAULT_PALETTE))
    overlay: Optional[PatternLayout] = None
    cell_size: int = 20


def render(c: Coloring, o: Optional[RenderOptions] = None) -> str:
    """
    Render a coloring as ascii text or a standalone SVG document.

    ascii: m lines of n symbols, colors 1..9 as digits then letters.
    svg: one rect per cell, overlay lines on subgrid/midgrid boundaries.

    Raises
    ------
    PaletteError
        If the palette (svg) or symbol set (ascii) cannot cover k colors.
    """
    o = o or RenderOptions()
    if o.format == 'ascii':
        return render_ascii(c)
    if o.format == 'svg':
        return render_svg(c, o.palette, o.overlay, o.cell_size)
    raise ValueError(f"Unknown render format {o.format!r}; use one of {FORMATS}")


def render_ascii(c: Coloring) -> str:
    if c.spec.colors > 35:
        raise PaletteError(f"ascii rendering covers 35 colors, got {c.spec.colors}")
    return '\n'.join(''.join(color_symbol(int(v)) for v in row) for row in c.grid) + '\n'


def render_svg(c: Coloring, palette: Sequence[str] = DEFAULT_PALETTE,
               overlay: Optional[PatternLayout] = None, cell_size: int = 20) -> str:
    k = c.spec.colors
    if len(palette) < k:
        raise PaletteError(f"Palette has {len(palette)} entries for {k} colors")
    m, n, s = c.spec.rows, c.spec.cols, cell_size
    width, height = n * s, m * s
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
           '<g class="cells" stroke="#ffffff" stroke-width="1">']
    for i in range(m):
        for j in range(n):
            out.append(f'<rect class="cell" x="{j * s}" y="{i * s}" width="{s}" height="{s}" '
                       f'fill="{palette[c[i, j] - 1]}"/>')
    out.append('</g>')
    if overlay is not None:
        rows_thin, rows_thick = overlay_lines(m, overlay.subgrid, overlay.midgrid)
        cols_thin, cols_thick = overlay_lines(n, overlay.subgrid, overlay.midgrid)
        out.append('<g class="overlay" stroke="#000000">')
        for kind, stroke, rows, cols in (('subgrid', 2, rows_thin, cols_thin),
                                         ('midgrid', 5, rows_thick, cols_thick)):
            for r in rows:
                out.append(f'<line class="{kind}" x1="0" y1="{r * s}" x2="{width}" y2="{r * s}" '
                           f'stroke-width="{stroke}"/>')
            for col in cols:
                out.append(f'<line class="{kind}" x1="{col * s}" y1="0" x2="{col * s}" y2="{height}" '
                           f'stroke-width="{stroke}"/>')
        out.append('</g>')
    out.append('</svg>')
    return '\n'.join(out) + '\n'
