# Reproduction harness: runs experiment recipes and compares outcomes

import logging
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional

from core.distribution import DistributionSet, check_necessary, export_smtlib, subgrid_bound_holds
from core.encoder import decode_model, encode
from core.errors import GridLabError
from core.extensions import extend_with_stripes
from core.grid import Coloring, GridSpec, find_monochromatic_rectangle
from core.isomorphism import classify
from core.layout import PatternLayout, extract_distribution, matches_layout
from gcl_utils.recipe_book import ExperimentRecipe, RecipeBook, get_recipe_book
from solver import SolveConfig, enumerate_colorings, solve
from .commands import EXIT_MISMATCH, EXIT_OK, EXIT_TIMEOUT, EXIT_USAGE, run_smtlib

logger = logging.getLogger(__name__)


@dataclass
class RecipeResult:
    """Step rows of one recipe run."""
    name: str
    steps: List[Dict[str, Any]] = field(default_factory=list)
    timed_out: bool = False

    @property
    def ok(self) -> bool:
        return all(step['ok'] for step in self.steps)

    def record(self, step: str, expected, observed, ok: bool, seconds: float) -> None:
        self.steps.append({'recipe': self.name, 'step': step, 'expected': str(expected),
                           'observed': str(observed), 'ok': bool(ok), 'seconds': seconds})
        logger.info("%s/%s: expected %s, observed %s (%.2fs)", self.name, step, expected, observed, seconds)


def verify_solution(c: Coloring, layout: Optional[PatternLayout] = None,
                    d: Optional[DistributionSet] = None) -> Optional[str]:
    """None when c is rectangle-free and honors the layout and distribution, else the defect."""
    witness = find_monochromatic_rectangle(c)
    if witness is not None:
        return f"rectangle {witness}"
    if layout is not None and not matches_layout(c, layout):
        return "layout mismatch"
    if d is not None and extract_distribution(c, layout) != d:
        return "distribution mismatch"
    return None


def _solve_and_check(spec: GridSpec, layout: Optional[PatternLayout], d: Optional[DistributionSet],
                     cfg: SolveConfig) -> str:
    """Observed status, with 'sat' only for verified models."""
    f, vm = encode(spec, layout, d, break_symmetry=cfg.symmetry_breaking)
    outcome = solve(f, cfg)
    if outcome.status != 'sat':
        if outcome.best_unsat is not None and outcome.status == 'unknown':
            return f"unknown (best_unsat={outcome.best_unsat})"
        return outcome.status
    defect = verify_solution(decode_model(outcome.model, vm, spec), layout, d)
    return 'sat' if defect is None else f"sat but {defect}"


def stripe_extension_check(k: int, cfg: Optional[SolveConfig] = None) -> Dict[str, Any]:
    """
    Search a k^2 x k^2 left k-subgrid shift with every color k times per
    subgrid, then append k stripe rows.

    Returns
    -------
    dict
        status ('extended', 'sat', 'unsat' or 'unknown'), the coloring and
        the extended coloring when found, and a message.
    """
    cfg = cfg or SolveConfig()
    n = k * k
    spec = GridSpec(n, n, k)
    layout = PatternLayout(k, 'left')
    d = DistributionSet.ones(k, k, k, k)
    f, vm = encode(spec, layout, d)
    outcome = solve(f, cfg)
    result = {'status': outcome.status, 'coloring': None, 'extended': None}
    if outcome.status != 'sat':
        result['message'] = f"G({n},{n},{k}) with one of each color per subgrid row: {outcome.status}"
        return result
    c = decode_model(outcome.model, vm, spec)
    result['coloring'] = c
    defect = verify_solution(c, layout, d)
    if defect is not None:
        result['message'] = f"decoded coloring fails: {defect}"
        return result
    extended = extend_with_stripes(c)
    result['extended'] = extended
    witness = find_monochromatic_rectangle(extended)
    if witness is None:
        result['status'] = 'extended'
        result['message'] = f"{extended.spec} rectangle-free"
    else:
        result['message'] = f"stripes created rectangle {witness}"
    return result


def left_implies_both_check(spec: GridSpec, z_values: Iterable[int],
                            cfg: Optional[SolveConfig] = None) -> List[Dict[str, Any]]:
    """
    Solve the both-direction and left-only encodings per subgrid size and
    record whether a both-direction solution came with a left-only one.
    """
    cfg = cfg or SolveConfig()
    rows = []
    for z in z_values:
        status = {}
        for direction in ('both', 'left'):
            f, _ = encode(spec, PatternLayout(z, direction), break_symmetry=cfg.symmetry_breaking)
            status[direction] = solve(f, cfg).status
        both, left = status['both'], status['left']
        holds = None if 'unknown' in (both, left) else not (both == 'sat' and left == 'unsat')
        rows.append({'z': z, 'both': both, 'left': left, 'holds': holds})
    return rows


def _timed(fn: Callable, *args):
    start = time.perf_counter()
    value = fn(*args)
    return value, time.perf_counter() - start


def _run_enumerate_classify(recipe: ExperimentRecipe, cfg: SolveConfig, res: RecipeResult) -> None:
    f, vm = encode(recipe.spec, recipe.layout)
    en, secs = _timed(lambda: enumerate_colorings(f, vm, recipe.spec, cfg=cfg))
    want = recipe.expected['count']
    observed = len(en) if en.complete else f"{len(en)} (incomplete)"
    res.timed_out |= not en.complete
    res.record('count', want, observed, en.complete and len(en) == want, secs)
    if 'classes' in recipe.expected and en.complete:
        classes, secs = _timed(classify, en.colorings)
        res.record('classes', recipe.expected['classes'], len(classes),
                   len(classes) == recipe.expected['classes'], secs)


def _run_sweep(recipe: ExperimentRecipe, cfg: SolveConfig, res: RecipeResult) -> None:
    sat_sizes = set(recipe.expected['sat'])
    for z in recipe.params['subgrids']:
        layout = PatternLayout(z, recipe.layout.direction if recipe.layout else 'left')
        expected = 'sat' if z in sat_sizes else 'unsat'
        observed, secs = _timed(_solve_and_check, recipe.spec, layout, None, cfg)
        res.timed_out |= observed.startswith('unknown')
        res.record(f"z={z}", expected, observed, observed == expected, secs)


def _run_pigeonhole(recipe: ExperimentRecipe, cfg: SolveConfig, res: RecipeResult) -> None:
    for k, n in recipe.params['cases']:
        spec = GridSpec(n, n, k)
        observed, secs = _timed(_solve_and_check, spec, PatternLayout(n, 'left'), None, cfg)
        res.timed_out |= observed.startswith('unknown')
        res.record(f"k={k} n={n}", 'unsat', observed, observed == 'unsat', secs)
    max_n, max_k = recipe.params.get('bound_max_n', 50), recipe.params.get('bound_max_k', 7)
    start = time.perf_counter()
    excluded = {(n, k) for k in range(1, max_k + 1) for n in range(k * k + 1, k * k + k)}
    disagree = [(n, k) for n in range(1, max_n + 1) for k in range(1, max_k + 1)
                if subgrid_bound_holds(n, k) == ((n, k) in excluded)]
    res.record('bound formula', 'agrees', 'agrees' if not disagree else f"differs at {disagree[:3]}",
               not disagree, time.perf_counter() - start)


def _run_solve(recipe: ExperimentRecipe, cfg: SolveConfig, res: RecipeResult) -> None:
    d = recipe.load_distribution()
    observed, secs = _timed(_solve_and_check, recipe.spec, recipe.layout, d, cfg)
    expected = recipe.expected.get('status', 'sat')
    if expected == 'any':
        ok = ' but ' not in observed
    else:
        ok = observed == expected
        res.timed_out |= observed.startswith('unknown')
    res.record(str(recipe.spec), expected, observed, ok, secs)


def _run_distribution_check(recipe: ExperimentRecipe, cfg: SolveConfig, res: RecipeResult) -> None:
    from gcl_utils.data_io import read_distribution
    from gcl_utils.paths import asset_path

    d = read_distribution(asset_path(recipe.params['file']), recipe.params['z'])
    report, secs = _timed(check_necessary, d)
    res.record('checks', 'pass', 'pass' if report.passed else report.message(), report.passed, secs)

    start = time.perf_counter()
    survivors = []
    for c in range(1, d.colors + 1):
        for i in range(d.shape[0]):
            for j in range(d.shape[1]):
                value = int(d.values[c - 1, i, j])
                if value < d.z and check_necessary(d.replace(c, i, j, value + 1)).results()['sum']:
                    survivors.append((c, i + 1, j + 1))
    res.record('single-entry increments', 'all break sum',
               'all break sum' if not survivors else f"sum holds after {survivors[:3]}",
               not survivors, time.perf_counter() - start)


def _run_checks_then_solve(recipe: ExperimentRecipe, cfg: SolveConfig, res: RecipeResult) -> None:
    d = recipe.load_distribution()
    report, secs = _timed(check_necessary, d)
    res.record('checks', 'pass', 'pass' if report.passed else 'fail', report.passed, secs)
    observed, secs = _timed(_solve_and_check, recipe.spec, recipe.layout, d, cfg)
    res.timed_out |= observed.startswith('unknown')
    res.record('encoding', 'unsat', observed, observed == 'unsat', secs)


def _run_stripes(recipe: ExperimentRecipe, cfg: SolveConfig, res: RecipeResult) -> None:
    for k in recipe.params['ks']:
        outcome, secs = _timed(stripe_extension_check, k, cfg)
        res.timed_out |= outcome['status'] == 'unknown'
        res.record(f"k={k}", 'extended', f"{outcome['status']}: {outcome['message']}",
                   outcome['status'] == 'extended', secs)


def _run_smtlib(recipe: ExperimentRecipe, cfg: SolveConfig, res: RecipeResult) -> None:
    p = recipe.params
    script, secs = _timed(export_smtlib, p['x'], p['y'], p['z'], p['k'])
    declared = len(re.findall(r'^\(declare-const ', script, flags=re.MULTILINE))
    want = p['k'] * p['x'] * p['y']
    well_formed = script.count('(') == script.count(')') and '(check-sat)' in script
    res.record('script', f"{want} constants", f"{declared} constants",
               declared == want and well_formed, secs)
    if 'z3' not in recipe.expected:
        return
    start = time.perf_counter()
    try:
        answer = run_smtlib(script, cfg.timeout)
    except ImportError:
        res.record('z3', recipe.expected['z3'], 'skipped (z3 not installed)', True, 0.0)
        return
    res.timed_out |= answer == 'unknown'
    res.record('z3', recipe.expected['z3'], answer, answer == recipe.expected['z3'],
               time.perf_counter() - start)


HARNESS = {
    'enumerate-classify': _run_enumerate_classify,
    'sweep': _run_sweep,
    'pigeonhole': _run_pigeonhole,
    'solve': _run_solve,
    'distribution-check': _run_distribution_check,
    'checks-then-solve': _run_checks_then_solve,
    'stripes': _run_stripes,
    'smtlib': _run_smtlib,
}


def run_recipe(recipe: ExperimentRecipe, seed: int = 0, timeout: Optional[float] = None) -> RecipeResult:
    """Run one recipe with its engine settings; a given timeout replaces the recipe's."""
    run_cfg = recipe.solve_config(SolveConfig(seed=seed), timeout=timeout)
    res = RecipeResult(recipe.name)
    logger.info("Running recipe %s (%s)", recipe.name, recipe.kind)
    HARNESS[recipe.kind](recipe, run_cfg, res)
    return res


def exit_status(results: List[RecipeResult]) -> int:
    if all(r.ok for r in results):
        return EXIT_OK
    if all(r.ok or r.timed_out for r in results):
        return EXIT_TIMEOUT
    return EXIT_MISMATCH


def _print_steps(res: RecipeResult) -> None:
    for step in res.steps:
        mark = 'ok' if step['ok'] else 'MISMATCH'
        print(f"{res.name}  {step['step']}: {step['observed']} (expected {step['expected']}) {mark}")


def run_repro(args, book: Optional[RecipeBook] = None) -> int:
    book = book or get_recipe_book()
    if args.list:
        for recipe in book.all():
            tag = '' if recipe.gating else '  [non-gating]'
            if recipe.aliases:
                tag += f"  (also: {', '.join(recipe.aliases)})"
            print(f"{recipe.name:20s} {recipe.description}{tag}")
        return EXIT_OK

    if args.all:
        recipes = book.all() if args.include_slow else book.gating()
    elif args.name:
        recipes = [book.get(args.name)]
    else:
        print("repro needs a recipe name, --all or --list", file=sys.stderr)
        return EXIT_USAGE

    results = []
    for recipe in recipes:
        try:
            res = run_recipe(recipe, seed=args.seed, timeout=args.timeout)
        except GridLabError as exc:
            res = RecipeResult(recipe.name)
            res.record('setup', 'runs', f"error: {exc}", False, 0.0)
        except Exception as exc:
            logger.exception("Recipe %s failed", recipe.name)
            res = RecipeResult(recipe.name)
            res.record('setup', 'runs', f"error: {type(exc).__name__}: {exc}", False, 0.0)
        _print_steps(res)
        results.append(res)

    rows = [step for res in results for step in res.steps]
    if args.report:
        from gcl_utils.report_generator import write_repro_table

        write_repro_table(args.report, rows)
    if args.html:
        from gcl_utils.report_generator import generate_html_report

        generate_html_report(args.html, rows)
    return exit_status(results)
