import re
from itertools import product

import numpy as np
import pytest

from core.distribution import (
    DistributionSet,
    check_necessary,
    entry_cap,
    export_smtlib,
    search_distributions,
    self_gap_bound,
    subgrid_bound_holds,
)
from core.encoder import decode_model, encode
from core.errors import LayoutError, ShapeError
from core.grid import GridSpec, is_rectangle_free
from core.layout import PatternLayout, extract_distribution, matches_layout
from solver import SolveConfig, solve


def exhaustive(x, y, z, k):
    """Every sum-respecting distribution filtered by check_necessary."""
    vectors = [v for v in product(range(z + 1), repeat=k) if sum(v) == z]
    found = set()
    for cells in product(vectors, repeat=x * y):
        values = np.array(cells, dtype=np.int64).T.reshape(k, x, y)
        d = DistributionSet(values, z)
        if check_necessary(d).passed:
            found.add(d)
    return found


def non_increasing_colors(d):
    flat = [tuple(m.ravel()) for m in d.values]
    return all(a >= b for a, b in zip(flat, flat[1:]))


class TestBounds:

    @staticmethod
    @pytest.mark.parametrize('z, bound', [(2, 0), (3, 2), (4, 2), (5, 4), (8, 6)])
    def test_self_gap_bound(z, bound):
        assert self_gap_bound(z) == bound

    @staticmethod
    @pytest.mark.parametrize('z, cap', [(2, 1), (3, 2), (5, 2), (7, 3), (13, 4)])
    def test_entry_cap(z, cap):
        assert entry_cap(z) == cap

    @staticmethod
    @pytest.mark.parametrize('n, k, holds', [
        (26, 5, False), (5, 2, False), (4, 2, True), (6, 2, True),
        (10, 3, False), (11, 3, False), (12, 3, True), (9, 3, True),
    ])
    def test_subgrid_bound(n, k, holds):
        assert subgrid_bound_holds(n, k) is holds


class TestDistributionSet:

    @staticmethod
    def test_ones():
        d = DistributionSet.ones(2, 3, 4, 5)
        assert d.shape == (2, 3) and d.colors == 5 and d.z == 4
        assert d.matrix(5).tolist() == [[1, 1, 1], [1, 1, 1]]

    @staticmethod
    @pytest.mark.parametrize('values, z', [
        (np.ones((2, 2)), 2),
        (np.full((1, 2, 2), 3), 2),
        (np.full((1, 2, 2), -1), 2),
        (np.full((1, 2, 2), 0.5), 2),
    ])
    def test_invalid(values, z):
        with pytest.raises(ShapeError):
            DistributionSet(values, z)

    @staticmethod
    def test_replace_copies():
        d = DistributionSet.ones(2, 2, 2, 2)
        e = d.replace(2, 1, 0, 0)
        assert e.values[1, 1, 0] == 0 and d.values[1, 1, 0] == 1
        assert d != e


class TestNecessaryConditions:

    @staticmethod
    def test_reference_passes(distribution25):
        report = check_necessary(distribution25)
        assert report.passed
        assert all(report.results().values())

    @staticmethod
    def test_all_ones_passes():
        assert check_necessary(DistributionSet.ones(5, 5, 5, 5)).passed

    @staticmethod
    def test_single_increment_breaks_sum(distribution25):
        x, y = distribution25.shape
        for c in range(1, distribution25.colors + 1):
            for i in range(x):
                for j in range(y):
                    value = int(distribution25.values[c - 1, i, j])
                    if value == distribution25.z:
                        continue
                    report = check_necessary(distribution25.replace(c, i, j, value + 1))
                    assert not report.results()['sum']
                    assert report.failures('sum')[0].index == (i + 1, j + 1)

    @staticmethod
    def test_self_gap_violation():
        # a 3 in a z=5 column: 3*3-3 = 6 > 4
        values = np.zeros((2, 1, 1), dtype=np.int64)
        values[0, 0, 0], values[1, 0, 0] = 3, 2
        report = check_necessary(DistributionSet(values, 5))
        assert not report.results()['self-gap-columns']
        assert not report.results()['self-gap-rows']
        assert report.failures('self-gap-columns')[0].color == 1

    @staticmethod
    def test_scalar_violation():
        # color 1 twice in two subgrid rows of columns 1 and 2: 2*2 + 2*2 = 8 > 5
        values = np.zeros((2, 2, 2), dtype=np.int64)
        values[0] = 2
        values[1] = 3
        report = check_necessary(DistributionSet(values, 5))
        failures = report.failures('scalar-columns')
        assert {(v.color, v.index) for v in failures} == {(1, (1, 2)), (2, (1, 2))}
        assert 'FAIL' in report.message()

    @staticmethod
    def test_refuses_both_direction():
        with pytest.raises(LayoutError):
            check_necessary(DistributionSet.ones(1, 1, 2, 2), direction='both')


class TestSolvedColorings:

    @staticmethod
    def solved(spec, layout, d=None):
        f, vm = encode(spec, layout, d)
        outcome = solve(f, SolveConfig(mode='cdcl', timeout=60, seed=1))
        assert outcome.status == 'sat'
        return decode_model(outcome.model, vm, spec)

    @pytest.mark.parametrize('dims, layout', [
        ((8, 8, 3), PatternLayout(4)),
        ((18, 18, 4), PatternLayout(3, midgrid=9)),
    ])
    def test_solved_grids_pass_checks(self, dims, layout):
        c = self.solved(GridSpec(*dims), layout)
        report = check_necessary(extract_distribution(c, layout))
        assert report.passed, report.violations

    def test_distribution_constraints_are_met(self):
        pytest.importorskip('pysat')
        spec, layout = GridSpec(8, 8, 3), PatternLayout(4)
        d = extract_distribution(self.solved(spec, layout), layout)
        c = self.solved(spec, layout, d)
        assert is_rectangle_free(c) and matches_layout(c, layout)
        assert extract_distribution(c, layout) == d


class TestSearch:

    @staticmethod
    @pytest.mark.parametrize('x, y, z, k', [(2, 2, 2, 2), (1, 3, 4, 2), (2, 2, 3, 3), (3, 3, 2, 2)])
    def test_matches_exhaustive_filter(x, y, z, k):
        result = search_distributions(x, y, z, k, symmetry_breaking=False)
        assert result.complete
        assert set(result) == exhaustive(x, y, z, k)
        assert len(set(result)) == len(result)

    @staticmethod
    @pytest.mark.parametrize('x, y, z, k', [(2, 2, 3, 3), (3, 3, 2, 2)])
    def test_symmetry_breaking_keeps_one_per_relabeling(x, y, z, k):
        full = set(search_distributions(x, y, z, k, symmetry_breaking=False))
        reduced = set(search_distributions(x, y, z, k))
        assert reduced == {d for d in full if non_increasing_colors(d)}

    @staticmethod
    def test_limit_and_budget():
        limited = search_distributions(2, 2, 3, 3, limit=2)
        assert len(limited) == 2 and not limited.complete
        starved = search_distributions(5, 5, 5, 5, node_budget=50)
        assert not starved.complete and starved.nodes <= 51

    @staticmethod
    def test_solutions_pass_checks():
        for d in search_distributions(2, 3, 5, 5, limit=5):
            assert check_necessary(d).passed

    @staticmethod
    def test_rejects_non_positive():
        with pytest.raises(ShapeError):
            search_distributions(0, 2, 2, 2)


class TestSmtlib:

    @staticmethod
    def test_size13_script():
        script = export_smtlib(13, 13, 2, 5)
        declared = re.findall(r'^\(declare-const (v_\d+_\d+_\d+) Int\)$', script, flags=re.MULTILINE)
        assert len(declared) == 5 * 13 * 13
        assert 'v_5_13_13' in declared
        assert script.count('(') == script.count(')')
        assert script.rstrip().endswith('(get-model)')

    @staticmethod
    @pytest.mark.parametrize('args, answer', [((1, 2, 2, 2), 'sat'), ((1, 2, 3, 1), 'unsat')])
    def test_z3_agrees_with_checks(args, answer):
        pytest.importorskip('z3')
        from cli.commands import run_smtlib

        assert run_smtlib(export_smtlib(*args), 30.0) == answer
