import argparse
import json

import pytest

from cli import main, repro
from cli.repro import (
    RecipeResult,
    exit_status,
    left_implies_both_check,
    run_recipe,
    run_repro,
    stripe_extension_check,
    verify_solution,
)
from core.distribution import DistributionSet
from core.errors import RecipeError
from core.grid import Coloring, GridSpec
from core.layout import PatternLayout
from gcl_utils.recipe_book import ExperimentRecipe, RecipeBook, get_recipe_book
from solver import SolveConfig

GATING = ['grid442', 'sweep10-left', 'sweep10-both', 'pigeonhole', 'grid18-midgrid',
          'grid25-distribution-checks', 'grid16-ones', 'stripes-small']

QUICK_GATING = ['grid442', 'pigeonhole', 'grid25-distribution-checks', 'sweep10-left', 'sweep10-both',
                'grid18-midgrid']


def write_book(tmp_path, recipes):
    path = tmp_path / 'recipes.json'
    path.write_text(json.dumps({'version': 1, 'recipes': recipes}))
    return str(path)


class TestRecipeBook:

    @staticmethod
    def test_builtin_book():
        book = get_recipe_book()
        assert [r.name for r in book.gating()] == GATING
        assert 'size13-smtlib' in book and len(book) == 13
        assert book.get('grid18-midgrid').layout == PatternLayout(3, 'left', midgrid=9)
        assert book.get('grid16-ones').solve_config().timeout == 1800

    @staticmethod
    def test_unknown_recipe():
        with pytest.raises(RecipeError, match='Unknown recipe'):
            get_recipe_book().get('no-such-recipe')

    @staticmethod
    @pytest.mark.parametrize('alias, name', [('table1-left', 'sweep10-left'), ('table1-both', 'sweep10-both')])
    def test_aliases(alias, name):
        book = get_recipe_book()
        assert alias in book
        assert book.get(alias) is book.get(name)
        assert alias not in book.names()

    @staticmethod
    @pytest.mark.parametrize('recipes', [
        [{'name': 'a', 'kind': 'solve', 'aliases': ['b']}, {'name': 'b', 'kind': 'solve'}],
        [{'name': 'a', 'kind': 'solve', 'aliases': ['a']}],
        [{'name': 'a', 'kind': 'solve', 'aliases': 'b'}],
        [{'name': 'a', 'kind': 'solve', 'aliases': ['']}],
    ])
    def test_alias_clashes(tmp_path, recipes):
        with pytest.raises(RecipeError):
            RecipeBook(write_book(tmp_path, recipes))

    @staticmethod
    def test_sweeps_break_symmetry():
        book = get_recipe_book()
        for name in ('sweep10-left', 'sweep10-both', 'pigeonhole'):
            assert book.get(name).solve_config().symmetry_breaking
        assert not book.get('grid442').solve_config().symmetry_breaking

    @staticmethod
    def test_missing_file_gives_empty_book(tmp_path):
        assert len(RecipeBook(str(tmp_path / 'absent.json'))) == 0

    @staticmethod
    @pytest.mark.parametrize('recipes', [
        [{'name': 'a', 'kind': 'solve'}, {'name': 'a', 'kind': 'solve'}],
        [{'name': 'a', 'kind': 'dance'}],
        [{'kind': 'solve'}],
        [{'name': 'a', 'kind': 'solve', 'spec': [4, 4]}],
        [{'name': 'a', 'kind': 'solve', 'layout': {'subgrid': 1}}],
        [{'name': 'a', 'kind': 'solve', 'engine': {'mode': 'quantum'}}],
    ])
    def test_malformed_books(tmp_path, recipes):
        with pytest.raises(RecipeError):
            RecipeBook(write_book(tmp_path, recipes))

    @staticmethod
    def test_assets_directory_override(tmp_path, monkeypatch):
        (tmp_path / 'recipes').mkdir()
        write_book(tmp_path / 'recipes', [{'name': 'mine', 'kind': 'solve', 'spec': [2, 2, 2]}])
        monkeypatch.setenv('GRID_COLORING_LAB_ASSETS', str(tmp_path))
        book = RecipeBook()
        assert [r.name for r in book.all()] == ['mine']

    @staticmethod
    def test_invalid_json(tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{"recipes": [')
        with pytest.raises(RecipeError):
            RecipeBook(str(path))


class TestExperimentRecipe:

    @staticmethod
    def test_solve_config_overrides():
        recipe = ExperimentRecipe.from_dict({'name': 'a', 'kind': 'solve', 'engine': {'timeout': 5}})
        assert recipe.solve_config().timeout == 5
        assert recipe.solve_config(SolveConfig(seed=4), timeout=None).seed == 4
        assert recipe.solve_config(timeout=9).timeout == 9

    @staticmethod
    def test_ones_distribution():
        recipe = ExperimentRecipe.from_dict({'name': 'a', 'kind': 'solve', 'spec': [6, 4, 2],
                                             'layout': {'subgrid': 2}, 'distribution': 'ones'})
        assert recipe.load_distribution() == DistributionSet.ones(3, 2, 2, 2)

    @staticmethod
    def test_distribution_file():
        recipe = get_recipe_book().get('grid25-distribution-checks')
        assert recipe.params['file'].startswith('distributions/')


class TestHarness:

    @staticmethod
    def test_verify_solution(coloring_asset):
        c = coloring_asset('grid25x25_ones.txt')
        layout = PatternLayout(5)
        assert verify_solution(c, layout, DistributionSet.ones(5, 5, 5, 5)) is None
        other = DistributionSet.ones(5, 5, 5, 5).replace(1, 0, 0, 2).replace(2, 0, 0, 0)
        assert verify_solution(c, layout, other) == 'distribution mismatch'
        bad = Coloring.from_rows([[1, 1], [1, 1]])
        assert verify_solution(bad).startswith('rectangle')

    @staticmethod
    def test_exit_status():
        ok, bad, slow = RecipeResult('ok'), RecipeResult('bad'), RecipeResult('slow', timed_out=True)
        ok.record('s', 1, 1, True, 0.0)
        bad.record('s', 1, 2, False, 0.0)
        slow.record('s', 'unsat', 'unknown', False, 0.0)
        assert exit_status([ok]) == 0
        assert exit_status([ok, slow]) == 3
        assert exit_status([ok, slow, bad]) == 1

    @staticmethod
    @pytest.mark.parametrize('name', QUICK_GATING)
    def test_gating_recipes(name):
        res = run_recipe(get_recipe_book().get(name))
        assert res.steps
        assert res.ok, res.steps

    @staticmethod
    def test_stripes_recipe():
        pytest.importorskip('pysat')
        res = run_recipe(get_recipe_book().get('stripes-small'))
        assert res.ok, res.steps

    @staticmethod
    def test_stripe_check_k2():
        pytest.importorskip('pysat')
        out = stripe_extension_check(2, SolveConfig(seed=1))
        assert out['status'] == 'extended'
        assert out['extended'].spec == GridSpec(6, 4, 2)

    @staticmethod
    def test_smtlib_recipe_script():
        res = run_recipe(get_recipe_book().get('size13-smtlib'), timeout=5)
        script_step = res.steps[0]
        assert script_step['ok'] and script_step['observed'] == '845 constants'

    @staticmethod
    def test_left_implies_both_small():
        rows = left_implies_both_check(GridSpec(4, 4, 2), [2, 4], SolveConfig(timeout=30))
        assert [row['z'] for row in rows] == [2, 4]
        assert all(row['holds'] for row in rows)

    @staticmethod
    @pytest.mark.slow
    def test_grid16_ones():
        pytest.importorskip('pysat')
        res = run_recipe(get_recipe_book().get('grid16-ones'))
        assert res.ok, res.steps


class TestTable1Rows:

    @staticmethod
    @pytest.mark.parametrize('name', ['table1-left', 'table1-both'])
    def test_row_statuses_and_time(name):
        res = run_recipe(get_recipe_book().get(name))
        assert [step['observed'] for step in res.steps] == ['unsat', 'unsat', 'sat'] + ['unsat'] * 5
        assert sum(step['seconds'] for step in res.steps) < 300

    @staticmethod
    def test_repro_by_spec_name(capsys):
        assert main(['repro', 'table1-left']) == 0
        out = capsys.readouterr().out
        assert 'sweep10-left  z=4: sat' in out


class TestReproLoop:

    @staticmethod
    def args(**overrides):
        base = dict(list=False, all=True, include_slow=False, name=None, seed=0, timeout=None,
                    report=None, html=None)
        base.update(overrides)
        return argparse.Namespace(**base)

    def test_foreign_error_is_recorded_and_loop_continues(self, tmp_path, monkeypatch, capsys):
        def broken(recipe, cfg, res):
            raise ImportError("pysat is required for distribution constraints")

        monkeypatch.setitem(repro.HARNESS, 'distribution-check', broken)
        path = write_book(tmp_path, [
            {'name': 'broken', 'kind': 'distribution-check', 'params': {'file': 'x.txt', 'z': 2}},
            {'name': 'fine', 'kind': 'smtlib', 'params': {'x': 2, 'y': 2, 'z': 2, 'k': 2}},
        ])
        assert run_repro(self.args(), book=RecipeBook(path)) == 1
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith('broken  setup: error: ImportError: pysat is required')
        assert out[1] == 'fine  script: 8 constants (expected 8 constants) ok'

    def test_list_shows_aliases(self, capsys):
        assert run_repro(self.args(all=False, list=True)) == 0
        assert '(also: table1-left)' in capsys.readouterr().out
