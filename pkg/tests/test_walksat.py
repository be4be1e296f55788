import sys
import textwrap
import threading
import time

import pytest

from core.encoder import CnfFormula, decode_model, encode, encode_base
from core.errors import GridLabError
from core.grid import GridSpec, is_rectangle_free
from core.layout import PatternLayout
from solver import SolveConfig, SolveOutcome, portfolio_plan, solve, solve_external, walksat


class TestSolveConfig:

    @staticmethod
    def test_walksat_alias():
        assert SolveConfig(mode='walksat').mode == 'local-search'

    @staticmethod
    @pytest.mark.parametrize('kwargs', [
        {'mode': 'magic'},
        {'timeout': 0},
        {'noise': 1.5},
        {'max_flips': 0},
        {'portfolio_width': 0},
    ])
    def test_invalid(kwargs):
        with pytest.raises(GridLabError):
            SolveConfig(**kwargs)

    @staticmethod
    def test_outcome_needs_model_when_sat():
        with pytest.raises(GridLabError):
            SolveOutcome('sat')
        assert str(SolveOutcome('unknown', best_unsat=3, engine='walksat')) == 'unknown (walksat, best_unsat=3)'


class TestWalksat:

    @staticmethod
    def test_finds_grid_coloring():
        f, vm = encode_base(GridSpec(4, 4, 2))
        outcome = walksat(f, SolveConfig(seed=2, mode='local-search'))
        assert outcome.status == 'sat' and outcome.best_unsat == 0
        assert f.satisfied_by(outcome.model)
        assert is_rectangle_free(decode_model(outcome.model, vm))

    @staticmethod
    def test_never_claims_unsat():
        f = CnfFormula(1, [(1,), (-1,)])
        outcome = walksat(f, SolveConfig(max_flips=2000))
        assert outcome.status == 'unknown'
        assert outcome.best_unsat == 1
        assert outcome.stats['flips'] == 2000

    @staticmethod
    def test_best_trace_is_decreasing():
        f, _ = encode_base(GridSpec(5, 5, 2))
        outcome = walksat(f, SolveConfig(seed=1, max_flips=20_000))
        assert outcome.status == 'unknown'
        trace = outcome.stats['best_trace']
        values = [best for _, best in trace]
        assert values == sorted(values, reverse=True)
        assert values[-1] == outcome.best_unsat >= 1

    @staticmethod
    def test_same_seed_same_run():
        f, _ = encode_base(GridSpec(5, 5, 2))
        cfg = SolveConfig(seed=9, max_flips=5000)
        assert walksat(f, cfg).stats['best_trace'] == walksat(f, cfg).stats['best_trace']

    @staticmethod
    def test_restarts_every_tenth_of_budget():
        f = CnfFormula(1, [(1,), (-1,)])
        outcome = walksat(f, SolveConfig(max_flips=1000))
        assert outcome.stats['restarts'] == 9


class TestPortfolio:

    @staticmethod
    def test_plan():
        plan = portfolio_plan(SolveConfig(portfolio_width=3, seed=10))
        assert [engine for engine, _ in plan] == ['cdcl', 'walksat', 'walksat']
        assert [cfg.seed for _, cfg in plan] == [10, 11, 12]
        assert plan[1][1].noise != plan[2][1].noise

    @staticmethod
    def test_decisive_result():
        f, vm = encode(GridSpec(6, 6, 3), PatternLayout(3))
        outcome = solve(f, SolveConfig(mode='portfolio', portfolio_width=2, timeout=60))
        assert outcome.status == 'sat'
        assert is_rectangle_free(decode_model(outcome.model, vm))

    @staticmethod
    def test_unsat_comes_from_cdcl():
        f, _ = encode_base(GridSpec(5, 5, 2))
        outcome = solve(f, SolveConfig(mode='portfolio', portfolio_width=2, timeout=60))
        assert outcome.status == 'unsat' and outcome.engine == 'cdcl'

    @staticmethod
    def test_losing_workers_are_stopped():
        # the local-search worker alone would run until its 300s timeout
        f, _ = encode_base(GridSpec(5, 5, 2))
        cfg = SolveConfig(mode='portfolio', portfolio_width=2, timeout=300, max_flips=10 ** 9)
        start = time.monotonic()
        outcome = solve(f, cfg)
        assert outcome.status == 'unsat' and outcome.stats['worker'] == 0
        assert time.monotonic() - start < 60

    @staticmethod
    def test_walksat_honors_stop_event():
        f, _ = encode_base(GridSpec(5, 5, 2))
        stop = threading.Event()
        stop.set()
        cfg = SolveConfig(mode='local-search', timeout=300, max_flips=10 ** 9)
        assert walksat(f, cfg, stop=stop).status == 'unknown'


class TestExternal:

    @staticmethod
    def fake_solver(tmp_path, output):
        script = tmp_path / 'fake_solver.py'
        script.write_text(textwrap.dedent(f"""
            import sys
            open(sys.argv[1]).read()
            print({output!r})
        """))
        return f'"{sys.executable}" "{script}"'

    def test_unsat(self, tmp_path):
        command = self.fake_solver(tmp_path, "s UNSATISFIABLE")
        assert solve_external(CnfFormula(1, [(1,)]), command, SolveConfig()).status == 'unsat'

    def test_sat_model(self, tmp_path):
        command = self.fake_solver(tmp_path, "s SATISFIABLE\nv 1 -2 0")
        outcome = solve_external(CnfFormula(2, [(1,), (-2,)]), command, SolveConfig())
        assert outcome.status == 'sat'
        assert CnfFormula(2, [(1,), (-2,)]).satisfied_by(outcome.model)

    def test_missing_executable(self):
        with pytest.raises(FileNotFoundError):
            solve_external(CnfFormula(1, [(1,)]), 'no-such-solver-binary', SolveConfig())
