# Visualization module for Grid Coloring Lab

from .render import RenderOptions, render, render_ascii, render_svg
from .plot_grid import plot_coloring, save_png
from .plot_utils import DEFAULT_PALETTE, color_symbol, symbol_color

__all__ = [
    'RenderOptions',
    'render',
    'render_ascii',
    'render_svg',
    'plot_coloring',
    'save_png',
    'DEFAULT_PALETTE',
    'color_symbol',
    'symbol_color'
]
