# Utility functions for Grid Coloring Lab

from .data_io import (
    read_coloring,
    write_coloring,
    read_colorings,
    write_colorings,
    parse_coloring,
    format_coloring,
    parse_ascii,
    read_distribution,
    write_distribution,
    write_distribution_xlsx,
    write_distribution_mat
)
from .dimacs import (
    write_dimacs,
    read_dimacs,
    read_dimacs_model,
    parse_solver_output,
    write_varmap,
    read_varmap,
    decode_external,
    save_encoding
)
from .paths import resource_path, asset_path

# Import other submodules to ensure they are reachable
from . import report_generator
from . import recipe_book

__all__ = [
    # Colorings and distributions
    'read_coloring',
    'write_coloring',
    'read_colorings',
    'write_colorings',
    'parse_coloring',
    'format_coloring',
    'parse_ascii',
    'read_distribution',
    'write_distribution',
    'write_distribution_xlsx',
    'write_distribution_mat',
    # DIMACS and sidecar maps
    'write_dimacs',
    'read_dimacs',
    'read_dimacs_model',
    'parse_solver_output',
    'write_varmap',
    'read_varmap',
    'decode_external',
    'save_encoding',
    # Paths
    'resource_path',
    'asset_path',
    'report_generator',
    'recipe_book'
]
