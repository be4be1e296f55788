# Exception hierarchy for Grid Coloring Lab


class GridLabError(Exception):
    """Base class for every error raised by the lab."""


class ShapeError(GridLabError, ValueError):
    """Malformed coloring, dimension mismatch or inconsistent shapes."""


class LayoutError(GridLabError, ValueError):
    """A pattern layout does not fit the grid or the chosen encoding."""


class DecodeError(GridLabError, ValueError):
    """A model does not assign exactly one color to some cell."""


class FormatError(GridLabError, ValueError):
    """Malformed text input (DIMACS, coloring, distribution or model)."""


class BudgetExceeded(GridLabError, RuntimeError):
    """A search ran past its configured node budget."""


class PaletteError(GridLabError, ValueError):
    """The palette has fewer entries than the coloring has colors."""


class RecipeError(GridLabError, KeyError):
    """Unknown or malformed experiment recipe."""

    def __str__(self):
        # KeyError would quote the message
        return str(self.args[0]) if self.args else ''
