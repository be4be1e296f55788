# Command-line parser for Grid Coloring Lab

import argparse

from core.layout import DIAGONAL_MODES

ENGINES = ('cdcl', 'walksat', 'local-search', 'portfolio')
DIRECTIONS = ('left', 'right', 'both', 'selector-both')
DIAGONALS = DIAGONAL_MODES + ('diag', 'anti')


def _spec_options(required: bool = True) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument('--spec', nargs=3, type=int, metavar=('M', 'N', 'K'), required=required,
                   help="grid rows, columns and colors")
    return p


def _layout_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group('shift pattern')
    g.add_argument('--subgrid', type=int, metavar='Z', help="subgrid size (enables the shift pattern)")
    g.add_argument('--direction', choices=DIRECTIONS, default='left', help="shift direction")
    g.add_argument('--midgrid', type=int, metavar='M', help="midgrid size, a multiple of Z")
    g.add_argument('--partial-rows', type=int, default=0, metavar='R',
                   help="leftover rows continuing the pattern")
    g.add_argument('--partial-cols', type=int, default=0, metavar='C',
                   help="leftover columns continuing the pattern")
    g.add_argument('--diagonal', choices=DIAGONALS, default='none',
                   help="subgrids on the diagonal copy the corner subgrid")
    g.add_argument('--distribution', metavar='FILE|ones',
                   help="color distribution file, or 'ones' for the all-ones set")
    return p


def _engine_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group('engine')
    g.add_argument('--engine', choices=ENGINES, default='cdcl', help="solving engine")
    g.add_argument('--timeout', type=float, default=60.0, metavar='SECS', help="wall-clock limit")
    g.add_argument('--seed', type=int, default=0, help="seed for every random choice")
    g.add_argument('--max-flips', type=int, default=1_000_000, help="local-search flip budget")
    g.add_argument('--noise', type=float, default=0.5, help="local-search walk probability")
    g.add_argument('--workers', type=int, default=4, help="portfolio width")
    return p


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per pipeline stage."""
    parser = argparse.ArgumentParser(
        prog='grid-coloring-lab',
        description="Rectangle-free grid colorings: encode, solve, enumerate, classify and reproduce.")
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="log progress to stderr (-v info, -vv debug)")
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    spec, layout, engine = _spec_options(), _layout_options(), _engine_options()

    p = sub.add_parser('encode', parents=[spec, layout], help="write the CNF encoding")
    p.add_argument('--format', choices=('dimacs',), default='dimacs', help="output format")
    p.add_argument('--output', metavar='PREFIX', help="write PREFIX.cnf and PREFIX.map instead of stdout")

    p = sub.add_parser('solve', parents=[spec, layout, engine], help="solve one instance")
    p.add_argument('--external-solver', metavar='CMD', help="run a DIMACS solver instead of the embedded ones")
    p.add_argument('--print', dest='print_coloring', action='store_true', help="print the coloring when sat")
    p.add_argument('--output', metavar='FILE', help="write the coloring when sat")
    p.add_argument('--expect', choices=('sat', 'unsat'), help="exit 1 unless the status matches")
    p.add_argument('--break-symmetry', action='store_true',
                   help="add symmetry-breaking clauses (answers sat/unsat only)")

    p = sub.add_parser('enumerate', parents=[spec, layout], help="list all colorings by blocking")
    p.add_argument('--limit', type=int, help="stop after this many colorings")
    p.add_argument('--timeout', type=float, default=600.0, metavar='SECS', help="overall limit")
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--print', dest='print_colorings', action='store_true', help="stream colorings to stdout")
    p.add_argument('--output', metavar='FILE', help="write colorings to FILE")

    p = sub.add_parser('verify', parents=[layout], help="check a coloring file")
    p.add_argument('file', help="coloring in the 'm n k' format")

    p = sub.add_parser('classify', help="group colorings up to isomorphism")
    p.add_argument('files', nargs='+', help="coloring files (several colorings per file allowed)")
    p.add_argument('--node-budget', type=int, default=2_000_000, help="canonical-form search budget")
    p.add_argument('--graph-check', action='store_true',
                   help="confirm representatives are pairwise non-isomorphic as graphs")

    p = sub.add_parser('distribute', help="color distribution checks, search and export")
    dsub = p.add_subparsers(dest='action', metavar='ACTION')
    dsub.required = True
    d = dsub.add_parser('check', help="run the necessary conditions on a distribution file")
    d.add_argument('file')
    d.add_argument('--subgrid', type=int, required=True, metavar='Z')
    d.add_argument('--xlsx', metavar='FILE', help="also write the distribution as a workbook")
    d.add_argument('--mat', metavar='FILE', help="also write the distribution as a .mat file")
    for name, text in (('search', "backtracking search for distributions"),
                       ('export', "SMT-LIB script of the conditions")):
        d = dsub.add_parser(name, help=text)
        d.add_argument('--shape', nargs=2, type=int, required=True, metavar=('X', 'Y'))
        d.add_argument('--subgrid', type=int, required=True, metavar='Z')
        d.add_argument('--colors', type=int, required=True, metavar='K')
        if name == 'search':
            d.add_argument('--limit', type=int, default=10)
            d.add_argument('--node-budget', type=int, default=1_000_000)
            d.add_argument('--no-symmetry-breaking', action='store_true')
        else:
            d.add_argument('--format', choices=('smtlib',), default='smtlib')
            d.add_argument('--output', metavar='FILE')
            d.add_argument('--check', action='store_true', help="run the script with z3")
            d.add_argument('--timeout', type=float, default=60.0, metavar='SECS')

    p = sub.add_parser('render', parents=[layout], help="draw a coloring")
    p.add_argument('file')
    p.add_argument('--format', choices=('ascii', 'svg', 'png'), default='ascii')
    p.add_argument('--overlay', action='store_true', help="draw subgrid/midgrid lines from the layout flags")
    p.add_argument('--cell-size', type=int, default=20)
    p.add_argument('--output', metavar='FILE', help="required for png")

    p = sub.add_parser('repro', help="run built-in experiment recipes")
    p.add_argument('name', nargs='?', help="recipe name")
    p.add_argument('--list', action='store_true', help="list recipes")
    p.add_argument('--all', action='store_true', help="run every gating recipe")
    p.add_argument('--include-slow', action='store_true', help="with --all, also run non-gating recipes")
    p.add_argument('--report', metavar='FILE', help="write the result table (.csv or .xlsx)")
    p.add_argument('--html', metavar='FILE', help="write an HTML summary")
    p.add_argument('--timeout', type=float, metavar='SECS', help="override recipe timeouts")
    p.add_argument('--seed', type=int, default=0)
    return parser
