# Symmetry-breaking clauses for sat/unsat queries on grid encodings

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple
import logging

import numpy as np

from .encoder import CnfFormula, VarMap

logger = logging.getLogger(__name__)

LEX_LIMIT = 200


@dataclass
class SymmetryReport:
    """What break_symmetries added to a formula."""
    colors: bool = False
    generators: List[str] = field(default_factory=list)
    clauses: int = 0
    variables: int = 0

    def __str__(self):
        names = ', '.join(self.generators) or 'none'
        return (f"color precedence: {'yes' if self.colors else 'no'}; "
                f"lex-leader: {names}; +{self.clauses} clauses, +{self.variables} vars")


def _length_groups(clauses: Iterable[Tuple[int, ...]]) -> Dict[int, np.ndarray]:
    groups: Dict[int, List[Tuple[int, ...]]] = {}
    for clause in clauses:
        groups.setdefault(len(clause), []).append(clause)
    return {width: np.unique(np.sort(np.asarray(rows, dtype=np.int64), axis=1), axis=0)
            for width, rows in groups.items()}


def preserves_formula(groups: Dict[int, np.ndarray], perm: np.ndarray) -> bool:
    """
    True when the variable permutation maps the clause set onto itself.

    Parameters
    ----------
    groups : dict
        Distinct clauses grouped by width, rows sorted and unique (see
        _length_groups).
    perm : numpy.ndarray
        perm[v] is the image of variable v; perm[0] is unused.
    """
    for block in groups.values():
        mapped = np.sign(block) * perm[np.abs(block)]
        if not np.array_equal(block, np.unique(np.sort(mapped, axis=1), axis=0)):
            return False
    return True


def color_permutation(vm: VarMap, color_perm: Tuple[int, ...]) -> np.ndarray:
    """Variable permutation relabeling color c as color_perm[c-1]+1 in every class."""
    k = vm.spec.colors
    perm = np.arange(vm.top + 1)
    cls = np.repeat(np.arange(vm.num_classes), k)
    colors = np.tile(np.arange(k), vm.num_classes)
    perm[1:vm.num_cell_vars + 1] = cls * k + np.asarray(color_perm)[colors] + 1
    return perm


def cell_permutation(vm: VarMap, rows: np.ndarray, cols: np.ndarray,
                     transpose: bool = False) -> Optional[np.ndarray]:
    """
    Variable permutation induced by moving cell (i, j) to (rows[i], cols[j]),
    after an optional transposition.

    Returns None when the cell map does not carry classes onto classes.
    Selector pairs follow their subgrid when the subgrid lands on another
    tiled subgrid; every other auxiliary variable stays in place.
    """
    m, n, k = vm.spec.rows, vm.spec.cols, vm.spec.colors
    ii, jj = np.meshgrid(np.arange(m), np.arange(n), indexing='ij')
    if transpose:
        ii, jj = jj, ii
    ti, tj = rows[ii], cols[jj]
    src = vm.classes.ravel()
    dst = vm.classes[ti, tj].ravel()

    class_map = np.full(vm.num_classes, -1, dtype=np.int64)
    class_map[src] = dst
    if not np.array_equal(class_map[src], dst) or np.unique(class_map).size != vm.num_classes:
        return None

    perm = np.arange(vm.top + 1)
    colors = np.arange(1, k + 1)
    perm[1:vm.num_cell_vars + 1] = (class_map[:, None] * k + colors).ravel()

    selectors = vm.aux.get('selector')
    layout = vm.layout
    if selectors and layout is not None:
        z = layout.subgrid
        X, Y = layout.blocks(vm.spec)
        for I in range(X):
            for J in range(Y):
                r, c = (J * z, I * z) if transpose else (I * z, J * z)
                r2, c2 = int(rows[r]), int(cols[c])
                if r2 % z or c2 % z or r2 // z >= X or c2 // z >= Y:
                    continue
                here = 2 * (I * Y + J)
                there = 2 * ((r2 // z) * Y + c2 // z)
                perm[selectors[here]] = selectors[there]
                perm[selectors[here + 1]] = selectors[there + 1]
        if np.unique(perm).size != perm.size:
            return None
    return perm


def _window_moves(size: int, width: int) -> List[Tuple[str, np.ndarray]]:
    """Adjacent swaps of aligned width-windows and one-step rotations inside them."""
    moves = []
    base = np.arange(size)
    for start in range(0, size - 2 * width + 1, width):
        p = base.copy()
        p[start:start + width], p[start + width:start + 2 * width] = \
            base[start + width:start + 2 * width], base[start:start + width]
        moves.append((f"swap {start}+{width}", p))
    if width > 2:
        for start in range(0, size - width + 1, width):
            p = base.copy()
            p[start:start + width] = np.roll(base[start:start + width], 1)
            moves.append((f"rotate {start}+{width}", p))
    return moves


def candidate_moves(vm: VarMap) -> List[Tuple[str, np.ndarray, np.ndarray, bool]]:
    """
    Row and column permutations worth testing as formula symmetries.

    Adjacent single-line swaps, swaps of adjacent aligned subgrid and
    midgrid bands, one-step rotations inside those bands and, for square
    grids, the transposition.
    """
    m, n = vm.spec.rows, vm.spec.cols
    widths = {1}
    if vm.layout is not None:
        widths.add(vm.layout.subgrid)
        if vm.layout.midgrid:
            widths.add(vm.layout.midgrid)
    moves = []
    for w in sorted(widths):
        moves += [(f"rows {name}", p, np.arange(n), False) for name, p in _window_moves(m, w)]
        moves += [(f"cols {name}", np.arange(m), p, False) for name, p in _window_moves(n, w)]
    if vm.spec.is_square:
        moves.append(('transpose', np.arange(m), np.arange(n), True))
    return moves


def color_precedence_clauses(vm: VarMap) -> Tuple[List[Tuple[int, ...]], int]:
    """
    Classes in id order may only open colors in increasing order.

    Class 0 takes color 1; class i may take color c > 1 only if color
    c-1 appears in a class before i. Returns the clauses and the new top
    variable. u[i][c] is true iff color c appears in classes 0..i.
    """
    k, count = vm.spec.colors, vm.num_classes
    top = vm.top
    clauses: List[Tuple[int, ...]] = []
    x = vm.class_var
    for c in range(2, k + 1):
        clauses.append((-x(0, c),))
    if count < 2 or k < 2:
        return clauses, top

    used = {}
    for i in range(count - 1):
        for c in range(1, k):
            top += 1
            used[i, c] = top
            clauses.append((-x(i, c), top))
            if i == 0:
                clauses.append((-top, x(0, c)))
            else:
                clauses.append((-used[i - 1, c], top))
                clauses.append((-top, used[i - 1, c], x(i, c)))
    for i in range(1, count):
        for c in range(2, k + 1):
            clauses.append((-x(i, c), used[i - 1, c - 1]))
    return clauses, top


def lex_leader_clauses(perm: np.ndarray, top: int,
                       limit: int = LEX_LIMIT) -> Tuple[List[Tuple[int, ...]], int]:
    """
    Clauses for X >= X∘perm in variable-id order, true above false.

    Only the first `limit` moved variables are compared; a truncated
    comparison is weaker but still admits a member of every orbit.
    """
    moved = [v for v in range(1, len(perm)) if perm[v] != v][:limit]
    clauses: List[Tuple[int, ...]] = []
    equal = None
    for t, a in enumerate(moved):
        b = int(perm[a])
        guard = () if equal is None else (-equal,)
        clauses.append(guard + (a, -b))
        if t == len(moved) - 1:
            break
        # e <-> prefix equal through position t
        top += 1
        clauses.append(guard + (-a, -b, top))
        clauses.append(guard + (a, b, top))
        if equal is not None:
            clauses.append((-top, equal))
        clauses.append((-top, a, -b))
        clauses.append((-top, -a, b))
        equal = top
    return clauses, top


def break_symmetries(f: CnfFormula, vm: VarMap, colors: bool = True, cells: bool = True,
                     max_clauses: int = 500_000) -> SymmetryReport:
    """
    Add symmetry-breaking clauses that keep satisfiability unchanged.

    Every candidate permutation is first checked to map the clause set
    of f onto itself; only confirmed symmetries contribute constraints,
    all lex-leader constraints sharing one variable order. The formula
    keeps at least one member of every solution orbit, so the result
    answers sat/unsat questions but must not be used for counting or
    enumeration. f is extended in place.

    Parameters
    ----------
    f : CnfFormula
        Formula built with vm, without earlier blocking clauses.
    vm : VarMap
        Variable map of f; auxiliary variables it records stay fixed
        except selector pairs.
    colors : bool
        Add color precedence when colors are interchangeable in f.
    cells : bool
        Add lex-leader constraints for row, column and transposition moves.
    max_clauses : int
        Formulas larger than this are left unchanged.
    """
    report = SymmetryReport()
    if len(f) > max_clauses or vm.top != f.num_vars:
        logger.info("Symmetry breaking skipped for %d clauses, %d vars", len(f), f.num_vars)
        return report
    groups = _length_groups(f.clauses)
    k = vm.spec.colors
    added: List[Tuple[int, ...]] = []
    top = vm.top

    if colors and k > 1:
        swap = (1, 0) + tuple(range(2, k))
        cycle = tuple(range(1, k)) + (0,)
        if all(preserves_formula(groups, color_permutation(vm, p)) for p in {swap, cycle}):
            clauses, top = color_precedence_clauses(vm)
            added += clauses
            report.colors = True

    if cells:
        seen = set()
        for name, rows, cols, transpose in candidate_moves(vm):
            perm = cell_permutation(vm, rows, cols, transpose)
            if perm is None:
                continue
            key = perm.tobytes()
            if key in seen or np.array_equal(perm, np.arange(perm.size)):
                continue
            seen.add(key)
            if preserves_formula(groups, perm):
                clauses, top = lex_leader_clauses(perm, top)
                added += clauses
                report.generators.append(name)

    report.variables = top - f.num_vars
    report.clauses = len(added)
    f.num_vars = top
    vm.adopt_aux(top, 'symmetry')
    f.extend(added)
    logger.info("Symmetry breaking: %s", report)
    return report
