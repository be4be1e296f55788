# Path utilities for Grid Coloring Lab
# Resolves shipped assets (recipes, reference colorings, distributions).

import os

ASSETS_ENV = 'GRID_COLORING_LAB_ASSETS'

# gcl_utils/ is one level below the project root
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def resource_path(relative_path: str) -> str:
    """
    Absolute path of a file shipped with the project.

    Parameters
    ----------
    relative_path : str
        Path relative to the project root (e.g. 'assets/recipes/recipes.json').
    """
    return os.path.join(PROJECT_ROOT, relative_path)


def asset_path(*parts: str) -> str:
    """
    Path below the assets directory.

    The directory is taken from $GRID_COLORING_LAB_ASSETS when set, so a
    private recipe book or coloring collection can replace the shipped one.
    """
    root = os.environ.get(ASSETS_ENV) or resource_path('assets')
    return os.path.join(root, *parts)
