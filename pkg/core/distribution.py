# Color distribution conditions: necessary checks, feasibility search, SMT-LIB export

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple
import logging

import numpy as np

from .errors import LayoutError, ShapeError

logger = logging.getLogger(__name__)

CHECKS = ('sum', 'self-gap-columns', 'self-gap-rows', 'scalar-columns', 'scalar-rows')


def self_gap_bound(z: int) -> int:
    """Number of usable gaps in a z-subgrid: z-1 for odd z, z-2 for even z."""
    return z - 1 if z % 2 else z - 2


def entry_cap(z: int) -> int:
    """Largest v with v*v - v within the self-gap bound (and at most z)."""
    bound = self_gap_bound(z)
    v = 0
    while v + 1 <= z and (v + 1) * v <= bound:
        v += 1
    return v


def subgrid_bound_holds(n: int, k: int) -> bool:
    """
    True unless the pigeonhole argument excludes a k-colored n-subgrid shift.

    An n-subgrid shift pattern with k colors is impossible when
    k^2 < n < k^2 + k.
    """
    return n <= k * k or n >= k * k + k


class DistributionSet:
    """
    Per-subgrid color counts divided by z.

    Holds a (k, x, y) integer array: entry [c-1, i, j] is the number of
    cells of color c in subgrid (i, j), divided by z.
    """

    def __init__(self, values, z: int):
        arr = np.asarray(values)
        if arr.ndim != 3:
            raise ShapeError(f"Distribution needs shape (k, x, y), got {arr.shape}")
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            raise ShapeError("Distribution entries must be integers")
        if z < 1:
            raise ShapeError(f"Subgrid size must be positive, got {z}")
        if arr.size and (arr.min() < 0 or arr.max() > z):
            raise ShapeError(f"Distribution entries must lie in 0..{z}")
        arr = arr.astype(np.int64)
        arr.setflags(write=False)
        self.values = arr
        self.z = int(z)

    @classmethod
    def ones(cls, x: int, y: int, z: int, k: int) -> 'DistributionSet':
        return cls(np.ones((k, x, y), dtype=np.int64), z)

    @property
    def colors(self) -> int:
        return self.values.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape[1], self.values.shape[2]

    def matrix(self, color: int) -> np.ndarray:
        """Matrix of a 1-based color."""
        return self.values[color - 1]

    def replace(self, color: int, i: int, j: int, value: int) -> 'DistributionSet':
        """Copy with one entry changed (1-based color, 0-based subgrid)."""
        arr = self.values.copy()
        arr[color - 1, i, j] = value
        return DistributionSet(arr, self.z)

    def __eq__(self, other):
        if not isinstance(other, DistributionSet):
            return NotImplemented
        return self.z == other.z and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.z, self.values.shape, self.values.tobytes()))

    def __repr__(self):
        return f"DistributionSet(z={self.z}, k={self.colors}, shape={self.shape})"


@dataclass(frozen=True)
class Violation:
    """One failed condition; indices are 1-based."""
    check: str
    color: Optional[int]
    index: Tuple[int, ...]
    value: int
    bound: int

    def __str__(self):
        where = ','.join(str(i) for i in self.index)
        color = '' if self.color is None else f" color {self.color}"
        return f"{self.check}{color} at ({where}): {self.value} vs bound {self.bound}"


@dataclass
class ConstraintReport:
    """Outcome of the necessary-condition checks."""
    z: int
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def results(self) -> Dict[str, bool]:
        failed = {v.check for v in self.violations}
        return {name: name not in failed for name in CHECKS}

    def failures(self, check: str) -> List[Violation]:
        return [v for v in self.violations if v.check == check]

    def message(self) -> str:
        lines = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in self.results().items()]
        lines += [f"  {v}" for v in self.violations]
        return '\n'.join(lines)


def check_necessary(d: DistributionSet, direction: str = 'left') -> ConstraintReport:
    """
    Evaluate the sum, self-gap and scalar-product conditions.

    Parameters
    ----------
    d : DistributionSet
        Candidate distribution.
    direction : str, optional
        Shift direction of the layout the distribution belongs to. The
        conditions hold for single-direction layouts only; 'both' is refused.

    Returns
    -------
    ConstraintReport
        Pass/fail per check with every violating index.

    Raises
    ------
    LayoutError
        For both-direction layouts, whose scalar bound is not known.
    """
    if direction in ('both', 'selector-both'):
        raise LayoutError("Necessary conditions are only established for single-direction shifts")
    v, z = d.values, d.z
    k, x, y = v.shape
    report = ConstraintReport(z)
    out = report.violations

    sums = v.sum(axis=0)
    for i, j in zip(*np.nonzero(sums != z)):
        out.append(Violation('sum', None, (int(i) + 1, int(j) + 1), int(sums[i, j]), z))

    bound = self_gap_bound(z)
    gaps = v * v - v
    for name, totals in (('self-gap-columns', gaps.sum(axis=1)), ('self-gap-rows', gaps.sum(axis=2))):
        for c, idx in zip(*np.nonzero(totals > bound)):
            out.append(Violation(name, int(c) + 1, (int(idx) + 1,), int(totals[c, idx]), bound))

    col_dots = np.einsum('cij,cil->cjl', v, v)
    row_dots = np.einsum('cij,clj->cil', v, v)
    for name, dots, size in (('scalar-columns', col_dots, y), ('scalar-rows', row_dots, x)):
        for a, b in combinations(range(size), 2):
            for c in np.nonzero(dots[:, a, b] > z)[0]:
                out.append(Violation(name, int(c) + 1, (a + 1, b + 1), int(dots[c, a, b]), z))
    return report


@dataclass
class DistributionSearch:
    """Result of search_distributions; iterable over the sets found."""
    solutions: List[DistributionSet]
    complete: bool
    nodes: int

    def __iter__(self) -> Iterator[DistributionSet]:
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def _cell_candidates(z: int, k: int, cap: int) -> List[Tuple[int, ...]]:
    """Compositions of z into k parts bounded by cap, most balanced first."""
    found = []

    def extend(prefix, remaining, slots):
        if slots == 1:
            if remaining <= cap:
                found.append(tuple(prefix + [remaining]))
            return
        for value in range(min(cap, remaining), -1, -1):
            extend(prefix + [value], remaining - value, slots - 1)

    extend([], z, k)
    found.sort(key=lambda vec: (sum(v * v - v for v in vec), tuple(-v for v in vec)))
    return found


def search_distributions(x: int, y: int, z: int, k: int, limit: Optional[int] = None,
                         node_budget: int = 1_000_000,
                         symmetry_breaking: bool = True) -> DistributionSearch:
    """
    Backtracking search for distributions passing check_necessary.

    Cells are filled in row-major order, each with a whole color vector
    summing to z. Self-gap and scalar-product partial sums only grow, so
    a prefix is pruned as soon as one exceeds its bound.

    Parameters
    ----------
    x, y : int
        Subgrid rows and columns.
    z : int
        Subgrid size.
    k : int
        Number of colors.
    limit : int, optional
        Stop after this many solutions.
    node_budget : int, optional
        Maximum number of cell assignments tried.
    symmetry_breaking : bool, optional
        Require color matrices to be lexicographically non-increasing,
        keeping one representative per color relabeling.

    Returns
    -------
    DistributionSearch
        Solutions found, whether the search was exhaustive, nodes used.
    """
    if min(x, y, z, k) < 1:
        raise ShapeError("x, y, z and k must be positive")
    bound = self_gap_bound(z)
    candidates = _cell_candidates(z, k, entry_cap(z))
    colors = range(k)

    val = [[[0] * y for _ in range(x)] for _ in colors]
    colgap = [[0] * y for _ in colors]
    rowgap = [[0] * x for _ in colors]
    coldot = [[[0] * y for _ in range(y)] for _ in colors]
    rowdot = [[[0] * x for _ in range(x)] for _ in colors]
    # tied[c]: colors c and c+1 agree on every cell placed so far
    tied = [True] * max(k - 1, 0)

    solutions: List[DistributionSet] = []
    nodes = 0
    stopped = False

    def fits(i, j, vec):
        for c in colors:
            vc = vec[c]
            g = vc * vc - vc
            if colgap[c][j] + g > bound or rowgap[c][i] + g > bound:
                return False
            if vc:
                row = val[c][i]
                for jj in range(j):
                    if coldot[c][jj][j] + vc * row[jj] > z:
                        return False
                for ii in range(i):
                    if rowdot[c][ii][i] + vc * val[c][ii][j] > z:
                        return False
        return True

    def apply(i, j, vec, sign):
        for c in colors:
            vc = vec[c]
            g = sign * (vc * vc - vc)
            colgap[c][j] += g
            rowgap[c][i] += g
            if vc:
                row = val[c][i]
                for jj in range(j):
                    coldot[c][jj][j] += sign * vc * row[jj]
                for ii in range(i):
                    rowdot[c][ii][i] += sign * vc * val[c][ii][j]
            val[c][i][j] = vc if sign > 0 else 0

    def visit(pos):
        nonlocal nodes, stopped
        if pos == x * y:
            solutions.append(DistributionSet(np.array(val, dtype=np.int64), z))
            if limit is not None and len(solutions) >= limit:
                stopped = True
            return
        i, j = divmod(pos, y)
        for vec in candidates:
            if stopped:
                return
            nodes += 1
            if nodes > node_budget:
                stopped = True
                return
            if symmetry_breaking and any(tied[c] and vec[c] < vec[c + 1] for c in range(k - 1)):
                continue
            if not fits(i, j, vec):
                continue
            saved = tied[:]
            if symmetry_breaking:
                for c in range(k - 1):
                    if tied[c] and vec[c] > vec[c + 1]:
                        tied[c] = False
            apply(i, j, vec, 1)
            visit(pos + 1)
            apply(i, j, vec, -1)
            tied[:] = saved

    visit(0)
    complete = not stopped
    logger.info("Distribution search x=%d y=%d z=%d k=%d: %d solutions, %d nodes, complete=%s",
                x, y, z, k, len(solutions), nodes, complete)
    return DistributionSearch(solutions, complete, nodes)


def _smt_sum(terms: List[str]) -> str:
    if not terms:
        return '0'
    return terms[0] if len(terms) == 1 else f"(+ {' '.join(terms)})"


def export_smtlib(x: int, y: int, z: int, k: int) -> str:
    """
    SMT-LIB 2 script asking for a distribution passing every necessary condition.

    Constants are named v_c_i_j with 1-based color, subgrid row and
    subgrid column. The script ends with (check-sat) and (get-model).
    """
    name = lambda c, i, j: f"v_{c}_{i}_{j}"
    cs, xs, ys = range(1, k + 1), range(1, x + 1), range(1, y + 1)
    bound = self_gap_bound(z)
    lines = [f"; color distribution conditions x={x} y={y} z={z} k={k}",
             "(set-logic QF_NIA)"]
    for c in cs:
        for i in xs:
            for j in ys:
                lines.append(f"(declare-const {name(c, i, j)} Int)")
    for c in cs:
        for i in xs:
            for j in ys:
                lines.append(f"(assert (and (>= {name(c, i, j)} 0) (<= {name(c, i, j)} {z})))")
    for i in xs:
        for j in ys:
            lines.append(f"(assert (= {_smt_sum([name(c, i, j) for c in cs])} {z}))")

    gap = lambda v: f"(- (* {v} {v}) {v})"
    for c in cs:
        for j in ys:
            lines.append(f"(assert (<= {_smt_sum([gap(name(c, i, j)) for i in xs])} {bound}))")
        for i in xs:
            lines.append(f"(assert (<= {_smt_sum([gap(name(c, i, j)) for j in ys])} {bound}))")
    for c in cs:
        for j1, j2 in combinations(ys, 2):
            terms = [f"(* {name(c, i, j1)} {name(c, i, j2)})" for i in xs]
            lines.append(f"(assert (<= {_smt_sum(terms)} {z}))")
        for i1, i2 in combinations(xs, 2):
            terms = [f"(* {name(c, i1, j)} {name(c, i2, j)})" for j in ys]
            lines.append(f"(assert (<= {_smt_sum(terms)} {z}))")
    lines += ["(check-sat)", "(get-model)"]
    return '\n'.join(lines) + '\n'
