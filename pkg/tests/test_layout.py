import numpy as np
import pytest

from core.distribution import DistributionSet
from core.errors import LayoutError, ShapeError
from core.grid import Coloring, GridSpec
from core.layout import PatternLayout, cell_classes, extract_distribution, matches_layout, subgrid_direction


def top_rows(c, count):
    return Coloring.from_rows(c.to_rows()[:count], c.spec.colors)


class TestPatternLayout:

    @staticmethod
    @pytest.mark.parametrize('kwargs', [
        {'subgrid': 1},
        {'subgrid': 3, 'direction': 'up'},
        {'subgrid': 3, 'midgrid': 7},
        {'subgrid': 3, 'partial_rows': 3},
        {'subgrid': 3, 'diagonal': 'sideways'},
        {'subgrid': 3, 'direction': 'both', 'midgrid': 6},
        {'subgrid': 3, 'direction': 'both', 'diagonal': 'diagonal'},
    ])
    def test_invalid(kwargs):
        with pytest.raises(LayoutError):
            PatternLayout(**kwargs)

    @staticmethod
    def test_aliases():
        assert PatternLayout(2, 'selector-both').direction == 'both'
        assert PatternLayout(2, diagonal='anti').diagonal == 'anti-diagonal'

    @staticmethod
    def test_step():
        assert PatternLayout(3, 'left').step == -1
        assert PatternLayout(3, 'right').step == 1

    @staticmethod
    def test_validate():
        with pytest.raises(LayoutError):
            PatternLayout(5).validate(GridSpec(4, 4, 2))
        with pytest.raises(LayoutError):
            PatternLayout(2, partial_rows=1).validate(GridSpec(4, 4, 2))
        PatternLayout(2, partial_rows=1, partial_cols=1).validate(GridSpec(5, 5, 2))


class TestCellClasses:

    @staticmethod
    def test_no_layout_is_identity():
        classes = cell_classes(GridSpec(3, 4, 2), None)
        assert np.array_equal(classes, np.arange(12).reshape(3, 4))

    @staticmethod
    def test_left_shift_ties_rows_to_first_row():
        classes = cell_classes(GridSpec(3, 3, 3), PatternLayout(3, 'left'))
        assert classes.max() + 1 == 3
        # row a, column u copies first-row column (u + a) mod z
        for a in range(3):
            for u in range(3):
                assert classes[a, u] == classes[0, (u + a) % 3]

    @staticmethod
    def test_right_shift_direction():
        classes = cell_classes(GridSpec(3, 3, 3), PatternLayout(3, 'right'))
        for a in range(3):
            for u in range(3):
                assert classes[a, u] == classes[0, (u - a) % 3]

    @staticmethod
    @pytest.mark.parametrize('spec, layout, count', [
        (GridSpec(4, 4, 2), PatternLayout(2), 8),
        (GridSpec(6, 6, 2), PatternLayout(3), 12),
        (GridSpec(6, 6, 2), PatternLayout(2, midgrid=6), 6),
        (GridSpec(4, 4, 2), PatternLayout(2, diagonal='diagonal'), 6),
        (GridSpec(4, 4, 2), PatternLayout(2, diagonal='anti-diagonal'), 6),
        (GridSpec(5, 5, 2), PatternLayout(2, partial_rows=1, partial_cols=1), 17),
        (GridSpec(5, 4, 2), PatternLayout(2), 12),
    ])
    def test_class_counts(spec, layout, count):
        assert int(cell_classes(spec, layout).max()) + 1 == count

    @staticmethod
    def test_ids_follow_row_major_order():
        classes = cell_classes(GridSpec(6, 6, 2), PatternLayout(3)).ravel()
        _, first = np.unique(classes, return_index=True)
        assert list(first) == sorted(first)

    @staticmethod
    def test_selector_layout_keeps_cells_apart():
        classes = cell_classes(GridSpec(4, 4, 2), PatternLayout(2, 'both'))
        assert classes.max() + 1 == 16


class TestMatchesLayout:

    @staticmethod
    def test_stripe_assets_follow_left_shift(coloring_asset):
        for name, k in (('grid6x4_stripes.txt', 2), ('grid12x9_stripes.txt', 3)):
            c = top_rows(coloring_asset(name), k * k)
            assert matches_layout(c, PatternLayout(k, 'left'))

    @staticmethod
    def test_grid25_is_left_not_right(coloring_asset):
        c = coloring_asset('grid25x25_ones.txt')
        assert matches_layout(c, PatternLayout(5, 'left'))
        assert not matches_layout(c, PatternLayout(5, 'right'))
        assert matches_layout(c, PatternLayout(5, 'both'))
        assert subgrid_direction(c, PatternLayout(5, 'both'), 2, 3) == 'left'

    @staticmethod
    def test_mismatch():
        c = Coloring.from_rows([[1, 2, 3], [1, 2, 3], [1, 2, 3]])
        assert not matches_layout(c, PatternLayout(3, 'left'))

    @staticmethod
    def test_layout_must_fit():
        with pytest.raises(LayoutError):
            matches_layout(Coloring.from_rows([[1, 2], [2, 1]]), PatternLayout(3))


class TestExtractDistribution:

    @staticmethod
    def test_all_ones(coloring_asset):
        c = coloring_asset('grid25x25_ones.txt')
        assert extract_distribution(c, PatternLayout(5)) == DistributionSet.ones(5, 5, 5, 5)

    @staticmethod
    def test_counts_divided_by_z():
        # first rows 1 1 2 (subgrid 0,0) and 3 3 3 (subgrid 0,1)
        left = [[1, 1, 2], [1, 2, 1], [2, 1, 1]]
        right = [[3, 3, 3]] * 3
        c = Coloring.from_rows([l + r for l, r in zip(left, right)], 3)
        d = extract_distribution(c, PatternLayout(3))
        assert d.values[:, 0, 0].tolist() == [2, 1, 0]
        assert d.values[:, 0, 1].tolist() == [0, 0, 3]

    @staticmethod
    def test_needs_tiling():
        c = Coloring.from_rows([[1, 2, 1], [2, 1, 2]])
        with pytest.raises(LayoutError):
            extract_distribution(c, PatternLayout(2))

    @staticmethod
    def test_non_shift_counts():
        c = Coloring.from_rows([[1, 1], [1, 2]])
        with pytest.raises(ShapeError):
            extract_distribution(c, PatternLayout(2))
