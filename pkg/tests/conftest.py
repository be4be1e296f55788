import os
import sys
from itertools import combinations

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from gcl_utils.data_io import read_coloring, read_distribution
from gcl_utils.paths import asset_path

COLORING_ASSETS = [
    'grid4x4_class_a.txt',
    'grid4x4_class_b.txt',
    'grid4x4_class_c.txt',
    'grid6x4_stripes.txt',
    'grid12x9_stripes.txt',
    'grid25x25_ones.txt',
    'grid30x25_stripes.txt',
]


def brute_force_rectangle(rows):
    """Quadruple loop over row and column pairs; True when some rectangle is monochromatic."""
    m, n = len(rows), len(rows[0])
    for r1, r2 in combinations(range(m), 2):
        for c1, c2 in combinations(range(n), 2):
            if rows[r1][c1] == rows[r1][c2] == rows[r2][c1] == rows[r2][c2]:
                return True
    return False


@pytest.fixture
def coloring_asset():
    def load(name):
        return read_coloring(asset_path('colorings', name))
    return load


@pytest.fixture
def distribution25():
    return read_distribution(asset_path('distributions', 'grid25_distribution.txt'), 5)


@pytest.fixture
def classes_4x4(coloring_asset):
    return [coloring_asset(f'grid4x4_class_{tag}.txt') for tag in 'abc']
