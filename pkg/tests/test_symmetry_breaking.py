import numpy as np
import pytest

from core.distribution import DistributionSet
from core.encoder import encode, encode_base, encode_shift_merged
from core.grid import GridSpec, is_rectangle_free, iter_all_colorings
from core.isomorphism import canonical_form
from core.layout import PatternLayout, matches_layout
from core.symmetry_breaking import (
    _length_groups,
    break_symmetries,
    cell_permutation,
    color_precedence_clauses,
    lex_leader_clauses,
    preserves_formula,
)
from core.encoder import decode_model
from solver import SolveConfig, enumerate_colorings, solve


def status_pair(spec, layout=None, d=None):
    plain = solve(encode(spec, layout, d)[0], SolveConfig(timeout=60)).status
    broken = solve(encode(spec, layout, d, break_symmetry=True)[0], SolveConfig(timeout=60)).status
    return plain, broken


class TestStatusPreserved:

    @staticmethod
    @pytest.mark.parametrize('dims', [(2, 2, 1), (2, 3, 1), (3, 3, 2), (4, 4, 2), (3, 6, 2),
                                      (3, 7, 2), (5, 5, 2), (4, 6, 2), (4, 4, 3)])
    def test_base(dims):
        plain, broken = status_pair(GridSpec(*dims))
        assert plain == broken != 'unknown'

    @staticmethod
    @pytest.mark.parametrize('dims, z, direction', [
        ((4, 4, 2), 2, 'left'),
        ((5, 5, 2), 5, 'left'),
        ((6, 6, 2), 3, 'right'),
        ((8, 8, 3), 4, 'left'),
        ((6, 6, 3), 2, 'left'),
        ((7, 7, 3), 3, 'left'),
        ((4, 4, 2), 2, 'both'),
        ((6, 6, 3), 3, 'both'),
    ])
    def test_shift_layouts(dims, z, direction):
        plain, broken = status_pair(GridSpec(*dims), PatternLayout(z, direction))
        assert plain == broken != 'unknown'

    @staticmethod
    def test_unequal_distribution_keeps_colors():
        pytest.importorskip('pysat')
        spec, layout = GridSpec(4, 4, 2), PatternLayout(4)
        d = DistributionSet(np.array([[[3]], [[1]]]), 4)
        f, vm = encode(spec, layout, d)
        report = break_symmetries(f, vm)
        assert not report.colors
        plain, broken = status_pair(spec, layout, d)
        assert plain == broken == 'unsat'

    @staticmethod
    def test_solution_still_decodes():
        spec, layout = GridSpec(8, 8, 3), PatternLayout(4)
        f, vm = encode(spec, layout, break_symmetry=True)
        outcome = solve(f, SolveConfig(seed=2))
        assert outcome.status == 'sat'
        c = decode_model(outcome.model, vm, spec)
        assert is_rectangle_free(c) and matches_layout(c, layout)
        # class 0 opens color 1
        assert c[0, 0] == 1


class TestOrbitsKeepAMember:

    @staticmethod
    @pytest.mark.parametrize('dims', [(3, 3, 2), (2, 4, 2), (3, 2, 3)])
    def test_every_class_survives(dims):
        spec = GridSpec(*dims)
        everything = {canonical_form(c).key for c in iter_all_colorings(spec) if is_rectangle_free(c)}
        f, vm = encode_base(spec)
        break_symmetries(f, vm)
        kept = enumerate_colorings(f, vm, spec)
        assert kept.complete
        assert {canonical_form(c).key for c in kept} == everything
        assert len(kept) < sum(is_rectangle_free(c) for c in iter_all_colorings(spec))

    @staticmethod
    def test_shift_classes_survive():
        spec, layout = GridSpec(4, 4, 2), PatternLayout(2)
        f, vm = encode(spec, layout)
        everything = {canonical_form(c).key for c in enumerate_colorings(f, vm, spec)}
        f2, vm2 = encode(spec, layout, break_symmetry=True)
        kept = enumerate_colorings(f2, vm2, spec)
        assert {canonical_form(c).key for c in kept} == everything


class TestGenerators:

    @staticmethod
    def test_band_swaps_found():
        f, vm = encode_shift_merged(GridSpec(4, 4, 2), PatternLayout(2))
        report = break_symmetries(f, vm)
        assert report.colors
        assert {'rows swap 0+2', 'cols swap 0+2', 'transpose'} <= set(report.generators)
        assert report.variables == f.num_vars - vm.num_cell_vars

    @staticmethod
    def test_rows_inside_a_band_are_not_a_symmetry():
        _, vm = encode_shift_merged(GridSpec(3, 3, 2), PatternLayout(3))
        assert cell_permutation(vm, np.array([1, 0, 2]), np.arange(3)) is None

    @staticmethod
    def test_selector_pairs_follow_subgrids():
        f, vm = encode(GridSpec(4, 4, 2), PatternLayout(2, 'both'))
        perm = cell_permutation(vm, np.array([2, 3, 0, 1]), np.arange(4))
        L, R = vm.aux['selector'][:2]
        assert (perm[L], perm[R]) == tuple(vm.aux['selector'][4:6])
        assert preserves_formula(_length_groups(f.clauses), perm)

    @staticmethod
    def test_non_symmetry_rejected():
        f, vm = encode_base(GridSpec(2, 3, 2))
        f.add_clause((vm.var(0, 0, 1),))
        perm = cell_permutation(vm, np.array([1, 0]), np.arange(3))
        assert not preserves_formula(_length_groups(f.clauses), perm)
        report = break_symmetries(f, vm)
        assert not report.colors
        assert not any(name.startswith('rows') for name in report.generators)

    @staticmethod
    def test_enumeration_unaffected_by_config():
        f, vm = encode_base(GridSpec(4, 4, 2))
        en = enumerate_colorings(f, vm, cfg=SolveConfig(symmetry_breaking=True))
        assert len(en) == 840


class TestClauseBuilders:

    @staticmethod
    def test_precedence_bounds_colors():
        _, vm = encode_base(GridSpec(1, 3, 3))
        clauses, top = color_precedence_clauses(vm)
        assert top == vm.top + 2 * 2
        units = {c for c in clauses if len(c) == 1}
        assert units == {(-vm.var(0, 0, 2),), (-vm.var(0, 0, 3),)}

    @staticmethod
    def test_lex_chain_size():
        perm = np.array([0, 3, 4, 1, 2])
        clauses, top = lex_leader_clauses(perm, 4)
        # four moved variables: three equality flags
        assert top == 7
        assert clauses[0] == (1, -3)

    @staticmethod
    def test_lex_limit_truncates():
        perm = np.array([0, 3, 4, 1, 2])
        clauses, top = lex_leader_clauses(perm, 4, limit=1)
        assert clauses == [(1, -3)] and top == 4
