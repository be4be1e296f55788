# Subcommand implementations for Grid Coloring Lab

import logging
import sys
from typing import Optional

from core.distribution import DistributionSet, check_necessary, export_smtlib, search_distributions
from core.encoder import decode_model, encode
from core.errors import GridLabError
from core.grid import GridSpec, find_monochromatic_rectangle
from core.isomorphism import classify, graphs_isomorphic
from core.layout import PatternLayout, extract_distribution, matches_layout
from gcl_utils import data_io
from gcl_utils.dimacs import save_encoding, write_dimacs
from gcl_utils.report_generator import classification_report
from solver import SolveConfig, solve, solve_external
from solver.enumeration import ColoringEnumerator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3


def layout_from_args(args) -> Optional[PatternLayout]:
    if getattr(args, 'subgrid', None) is None:
        return None
    return PatternLayout(args.subgrid, direction=args.direction, midgrid=args.midgrid,
                         partial_rows=args.partial_rows, partial_cols=args.partial_cols,
                         diagonal=args.diagonal)


def config_from_args(args) -> SolveConfig:
    return SolveConfig(seed=args.seed, timeout=args.timeout, mode=args.engine,
                       max_flips=args.max_flips, noise=args.noise, portfolio_width=args.workers,
                       symmetry_breaking=getattr(args, 'break_symmetry', False))


def distribution_from_args(args, spec: GridSpec, layout: Optional[PatternLayout]) -> Optional[DistributionSet]:
    if not getattr(args, 'distribution', None):
        return None
    if layout is None:
        raise GridLabError("--distribution needs --subgrid")
    if args.distribution == 'ones':
        x, y = layout.blocks(spec)
        return DistributionSet.ones(x, y, layout.subgrid, spec.colors)
    return data_io.read_distribution(args.distribution, layout.subgrid)


def _problem(args):
    spec = GridSpec(*args.spec)
    layout = layout_from_args(args)
    d = distribution_from_args(args, spec, layout)
    f, vm = encode(spec, layout, d, break_symmetry=getattr(args, 'break_symmetry', False))
    return spec, layout, d, f, vm


def _write(text: str, path: Optional[str] = None) -> None:
    if path:
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(text)
        logger.info("Written %s", path)
    else:
        sys.stdout.write(text)


def cmd_encode(args) -> int:
    spec, layout, _, f, vm = _problem(args)
    comments = [f"grid-coloring-lab {spec}"]
    if layout is not None:
        comments.append(f"layout {layout.describe()}")
    if args.output:
        cnf_path, map_path = save_encoding(args.output, f, vm, comments)
        print(cnf_path)
        print(map_path)
    else:
        sys.stdout.write(write_dimacs(f, comments))
    return EXIT_OK


def cmd_solve(args) -> int:
    spec, layout, d, f, vm = _problem(args)
    cfg = config_from_args(args)
    if args.external_solver:
        outcome = solve_external(f, args.external_solver, cfg)
    else:
        outcome = solve(f, cfg)
    print(outcome)

    if outcome.status == 'sat':
        c = decode_model(outcome.model, vm, spec)
        witness = find_monochromatic_rectangle(c)
        if witness is not None:
            print(f"rectangle: {witness}")
            return EXIT_MISMATCH
        if layout is not None and not matches_layout(c, layout):
            print("layout: mismatch")
            return EXIT_MISMATCH
        if args.print_coloring:
            sys.stdout.write(data_io.format_coloring(c))
        if args.output:
            data_io.write_coloring(args.output, c)
    elif outcome.status == 'unknown':
        return EXIT_TIMEOUT
    if args.expect and outcome.status != args.expect:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_enumerate(args) -> int:
    spec, _, _, f, vm = _problem(args)
    cfg = SolveConfig(seed=args.seed, timeout=args.timeout)
    enumerator = ColoringEnumerator(f, vm, spec, cfg)
    out = open(args.output, 'w', encoding='utf-8') if args.output else None
    try:
        for c in enumerator.run(args.limit):
            text = data_io.format_coloring(c)
            if args.print_colorings:
                sys.stdout.write(text + '\n')
            if out is not None:
                out.write(text + '\n')
    finally:
        if out is not None:
            out.close()
    tail = '' if enumerator.complete else ' (incomplete)'
    prefix = '# ' if args.print_colorings else ''
    print(f"{prefix}{enumerator.count} colorings{tail}")
    if enumerator.timed_out:
        return EXIT_TIMEOUT
    return EXIT_OK


def cmd_verify(args) -> int:
    c = data_io.read_coloring(args.file)
    status = EXIT_OK
    witness = find_monochromatic_rectangle(c)
    if witness is None:
        print("rectangle-free")
    else:
        print(f"rectangle: {witness}")
        status = EXIT_MISMATCH
    layout = layout_from_args(args)
    if layout is not None:
        layout.validate(c.spec)
        ok = matches_layout(c, layout)
        print(f"layout {layout.describe()}: {'match' if ok else 'mismatch'}")
        if not ok:
            status = EXIT_MISMATCH
        d = distribution_from_args(args, c.spec, layout)
        if d is not None:
            same = ok and extract_distribution(c, layout) == d
            print(f"distribution: {'match' if same else 'mismatch'}")
            if not same:
                status = EXIT_MISMATCH
    return status


def cmd_classify(args) -> int:
    colorings = []
    for path in args.files:
        colorings.extend(data_io.read_colorings(path))
    classes = classify(colorings, node_budget=args.node_budget)
    sys.stdout.write(classification_report(classes))
    if args.graph_check:
        reps = [cls.representative for cls in classes]
        clashes = [(a + 1, b + 1) for a in range(len(reps)) for b in range(a + 1, len(reps))
                   if graphs_isomorphic(reps[a], reps[b])]
        print(f"graph check: {'ok' if not clashes else 'isomorphic pairs ' + str(clashes)}")
        if clashes:
            return EXIT_MISMATCH
    return EXIT_OK


def run_smtlib(script: str, timeout: float) -> str:
    """Run an SMT-LIB script with z3; returns 'sat', 'unsat' or 'unknown'."""
    try:
        import z3
    except ImportError:
        raise ImportError("z3-solver is required to check SMT-LIB scripts. Install with: pip install z3-solver")

    s = z3.Solver()
    s.set('timeout', int(timeout * 1000))
    body = '\n'.join(line for line in script.splitlines()
                     if not line.startswith(('(check-sat', '(get-model', '(exit')))
    s.from_string(body)
    return str(s.check())


def cmd_distribute(args) -> int:
    if args.action == 'check':
        d = data_io.read_distribution(args.file, args.subgrid)
        report = check_necessary(d)
        print(report.message())
        if args.xlsx:
            data_io.write_distribution_xlsx(args.xlsx, d)
        if args.mat:
            data_io.write_distribution_mat(args.mat, d)
        return EXIT_OK if report.passed else EXIT_MISMATCH

    x, y = args.shape
    if args.action == 'search':
        result = search_distributions(x, y, args.subgrid, args.colors, limit=args.limit,
                                      node_budget=args.node_budget,
                                      symmetry_breaking=not args.no_symmetry_breaking)
        for d in result:
            sys.stdout.write(data_io.format_distribution(d) + '\n')
        tail = '' if result.complete else ' (incomplete)'
        print(f"# {len(result)} distributions, {result.nodes} nodes{tail}")
        limit_hit = args.limit is not None and len(result) >= args.limit
        return EXIT_OK if result.complete or limit_hit else EXIT_TIMEOUT

    script = export_smtlib(x, y, args.subgrid, args.colors)
    _write(script, args.output)
    if args.check:
        answer = run_smtlib(script, args.timeout)
        print(f"z3: {answer}", file=sys.stderr if not args.output else sys.stdout)
        if answer == 'unknown':
            return EXIT_TIMEOUT
    return EXIT_OK


def cmd_render(args) -> int:
    from visualization import RenderOptions, render, save_png

    c = data_io.read_coloring(args.file)
    overlay = layout_from_args(args) if args.overlay else None
    if args.overlay and overlay is None:
        raise GridLabError("--overlay needs --subgrid")
    if args.format == 'png':
        if not args.output:
            raise GridLabError("png rendering needs --output FILE")
        save_png(c, args.output, overlay=overlay)
        print(args.output)
        return EXIT_OK
    _write(render(c, RenderOptions(format=args.format, overlay=overlay, cell_size=args.cell_size)),
           args.output)
    return EXIT_OK


def cmd_repro(args) -> int:
    from .repro import run_repro

    return run_repro(args)


COMMANDS = {
    'encode': cmd_encode,
    'solve': cmd_solve,
    'enumerate': cmd_enumerate,
    'verify': cmd_verify,
    'classify': cmd_classify,
    'distribute': cmd_distribute,
    'render': cmd_render,
    'repro': cmd_repro,
}


def dispatch(args) -> int:
    return COMMANDS[args.command](args)
