# Core domain types and algorithms for Grid Coloring Lab

from .errors import (
    GridLabError,
    ShapeError,
    LayoutError,
    DecodeError,
    FormatError,
    BudgetExceeded,
    PaletteError,
    RecipeError
)
from .grid import (
    GridSpec,
    Coloring,
    RectangleWitness,
    find_monochromatic_rectangle,
    is_rectangle_free,
    iter_all_colorings
)
from .layout import PatternLayout, cell_classes, matches_layout, extract_distribution
from .symmetry import IsoElement, apply_isomorphism

# Encodings
from .encoder import (
    VarMap,
    CnfFormula,
    encode,
    encode_base,
    encode_shift_merged,
    encode_shift_selector,
    add_distribution_constraints,
    add_blocking_clause,
    decode_model
)
from .symmetry_breaking import SymmetryReport, break_symmetries

# Distributions
from .distribution import (
    DistributionSet,
    ConstraintReport,
    check_necessary,
    search_distributions,
    export_smtlib,
    subgrid_bound_holds
)

# Classification and extensions
from .isomorphism import CanonicalForm, IsoClass, canonical_form, classify, grid_to_graph
from .extensions import stripe_ready, extend_with_stripes

__all__ = [
    # Errors
    'GridLabError',
    'ShapeError',
    'LayoutError',
    'DecodeError',
    'FormatError',
    'BudgetExceeded',
    'PaletteError',
    'RecipeError',
    # Grid
    'GridSpec',
    'Coloring',
    'RectangleWitness',
    'find_monochromatic_rectangle',
    'is_rectangle_free',
    'iter_all_colorings',
    'PatternLayout',
    'cell_classes',
    'matches_layout',
    'extract_distribution',
    'IsoElement',
    'apply_isomorphism',
    # Encodings
    'VarMap',
    'CnfFormula',
    'encode',
    'encode_base',
    'encode_shift_merged',
    'encode_shift_selector',
    'add_distribution_constraints',
    'add_blocking_clause',
    'decode_model',
    'SymmetryReport',
    'break_symmetries',
    # Distributions
    'DistributionSet',
    'ConstraintReport',
    'check_necessary',
    'search_distributions',
    'export_smtlib',
    'subgrid_bound_holds',
    # Classification and extensions
    'CanonicalForm',
    'IsoClass',
    'canonical_form',
    'classify',
    'grid_to_graph',
    'stripe_ready',
    'extend_with_stripes'
]
