import pytest

from core.distribution import DistributionSet
from core.encoder import encode, encode_base
from core.grid import GridSpec, is_rectangle_free, iter_all_colorings
from core.layout import PatternLayout, matches_layout
from solver import ColoringEnumerator, SolveConfig, enumerate_colorings, iter_colorings


def brute_force_count(spec, layout=None):
    return sum(1 for c in iter_all_colorings(spec)
               if is_rectangle_free(c) and (layout is None or matches_layout(c, layout)))


class TestEnumeration:

    @staticmethod
    def test_grid442_count():
        f, vm = encode_base(GridSpec(4, 4, 2))
        en = enumerate_colorings(f, vm)
        assert en.complete
        assert len(en) == 840
        assert len(set(en.colorings)) == 840
        assert all(is_rectangle_free(c) for c in en)

    @staticmethod
    @pytest.mark.parametrize('dims, count', [((2, 2, 1), 0), ((1, 2, 2), 4)])
    def test_tiny_counts(dims, count):
        f, vm = encode_base(GridSpec(*dims))
        en = enumerate_colorings(f, vm)
        assert en.complete and len(en) == count

    @staticmethod
    @pytest.mark.parametrize('dims', [(2, 3, 2), (3, 3, 2), (2, 4, 2), (3, 2, 3)])
    def test_matches_brute_force(dims):
        spec = GridSpec(*dims)
        f, vm = encode_base(spec)
        assert len(enumerate_colorings(f, vm)) == brute_force_count(spec)

    @staticmethod
    def test_shift_layout_counts():
        spec, layout = GridSpec(4, 4, 2), PatternLayout(2)
        f, vm = encode(spec, layout)
        en = enumerate_colorings(f, vm)
        assert en.complete
        assert len(en) == brute_force_count(spec, layout)

    @staticmethod
    def test_selector_variables_do_not_split_colorings():
        # z=2 left and right shifts coincide, so both selectors fit every coloring
        spec = GridSpec(4, 4, 2)
        f, vm = encode(spec, PatternLayout(2, 'both'))
        en = enumerate_colorings(f, vm)
        assert len(en) == len(set(en.colorings)) == brute_force_count(spec, PatternLayout(2))

    @staticmethod
    def test_counter_variables_do_not_split_colorings():
        pytest.importorskip('pysat')
        spec, layout = GridSpec(4, 4, 2), PatternLayout(2)
        f, vm = encode(spec, layout, DistributionSet.ones(2, 2, 2, 2))
        en = enumerate_colorings(f, vm)
        assert en.complete
        assert len(en) == len(set(en.colorings)) > 0

    @staticmethod
    def test_limit():
        f, vm = encode_base(GridSpec(4, 4, 2))
        en = enumerate_colorings(f, vm, limit=10)
        assert len(en) == 10 and not en.complete

    @staticmethod
    def test_does_not_modify_formula():
        f, vm = encode_base(GridSpec(3, 3, 2))
        before = len(f)
        enumerate_colorings(f, vm)
        assert len(f) == before


class TestColoringEnumerator:

    @staticmethod
    def test_streaming_counts():
        f, vm = encode_base(GridSpec(2, 3, 2))
        enumerator = ColoringEnumerator(f, vm)
        first = next(iter(enumerator))
        assert is_rectangle_free(first)
        assert enumerator.count == 1 and not enumerator.complete

    @staticmethod
    def test_generator_form():
        f, vm = encode_base(GridSpec(1, 2, 2))
        assert len(list(iter_colorings(f, vm))) == 4

    @staticmethod
    def test_timeout_marks_incomplete():
        f, vm = encode_base(GridSpec(4, 5, 3))
        enumerator = ColoringEnumerator(f, vm, cfg=SolveConfig(timeout=0.01))
        list(enumerator.run())
        assert enumerator.timed_out and not enumerator.complete
