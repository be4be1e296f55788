# CNF encodings of rectangle-free colorings and their shift-pattern variants

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
import logging

import numpy as np
from scipy.special import comb

from .errors import DecodeError, LayoutError, ShapeError
from .grid import Coloring, GridSpec
from .layout import PatternLayout, cell_classes, subgrid_first_row_classes
from .distribution import DistributionSet

logger = logging.getLogger(__name__)

Clause = Tuple[int, ...]
ModelLike = Union[Mapping[int, bool], Sequence[int], np.ndarray]


class VarMap:
    """
    Mapping of (cell, color) pairs to propositional variables.

    Cell (i, j) belongs to class classes[i, j]; color c of class q is
    variable q*k + c. Without merging this is (i*n + j)*k + c, i.e. the
    row-major numbering with 1-based colors. Auxiliary variables
    (selectors, counters) are allocated above all cell variables.
    """

    def __init__(self, spec: GridSpec, layout: Optional[PatternLayout] = None,
                 classes: Optional[np.ndarray] = None):
        self.spec = spec
        self.layout = layout
        self.classes = cell_classes(spec, layout) if classes is None else np.asarray(classes)
        self.num_classes = int(self.classes.max()) + 1
        self.num_cell_vars = self.num_classes * spec.colors
        self.top = self.num_cell_vars
        self.aux: Dict[str, List[int]] = {}
        # smallest row-major cell of each class
        flat = self.classes.ravel()
        _, first = np.unique(flat, return_index=True)
        self.representatives = [divmod(int(p), spec.cols) for p in first]

    @property
    def merged(self) -> bool:
        return self.num_classes < self.spec.cells

    def var(self, i: int, j: int, color: int) -> int:
        """Variable for 0-based cell (i, j) and 1-based color."""
        return int(self.classes[i, j]) * self.spec.colors + color

    def class_var(self, cls: int, color: int) -> int:
        return cls * self.spec.colors + color

    def cell_vars(self) -> np.ndarray:
        """(m, n, k) array of variable ids."""
        k = self.spec.colors
        return self.classes[:, :, None] * k + np.arange(1, k + 1)

    def register_aux(self, count: int, label: str) -> List[int]:
        ids = list(range(self.top + 1, self.top + count + 1))
        self.top += count
        self.aux.setdefault(label, []).extend(ids)
        return ids

    def adopt_aux(self, new_top: int, label: str) -> List[int]:
        """Record variables an external encoder allocated up to new_top."""
        if new_top <= self.top:
            return []
        return self.register_aux(new_top - self.top, label)

    def __repr__(self):
        return (f"VarMap({self.spec}, classes={self.num_classes}, "
                f"cell_vars={self.num_cell_vars}, top={self.top})")


@dataclass
class CnfFormula:
    """Clause database in DIMACS literal convention."""
    num_vars: int = 0
    clauses: List[Clause] = field(default_factory=list)

    def __post_init__(self):
        checked = []
        for clause in self.clauses:
            checked.append(self._checked(clause))
        self.clauses = checked

    def _checked(self, clause: Iterable[int]) -> Clause:
        clause = tuple(int(lit) for lit in clause)
        if not clause:
            raise ShapeError("Empty clause")
        seen = set()
        for lit in clause:
            if lit == 0 or abs(lit) > self.num_vars:
                raise ShapeError(f"Literal {lit} out of range 1..{self.num_vars}")
            if -lit in seen:
                raise ShapeError(f"Tautological clause {clause}")
            seen.add(lit)
        return clause

    def add_clause(self, clause: Iterable[int]) -> None:
        self.clauses.append(self._checked(clause))

    def extend(self, clauses: Iterable[Iterable[int]]) -> None:
        for clause in clauses:
            self.add_clause(clause)

    def copy(self) -> 'CnfFormula':
        return CnfFormula(self.num_vars, list(self.clauses))

    def satisfied_by(self, model: ModelLike) -> bool:
        values = model_array(model, self.num_vars)
        return all(any(values[lit] if lit > 0 else not values[-lit] for lit in clause)
                   for clause in self.clauses)

    def __len__(self):
        return len(self.clauses)


def model_array(model: ModelLike, num_vars: int) -> np.ndarray:
    """
    Normalize a model to a boolean array indexed by variable id.

    Accepts a {var: bool} mapping, a sequence of signed literals, or a
    boolean array already indexed by id. Missing variables are False.
    """
    values = np.zeros(num_vars + 1, dtype=bool)
    if isinstance(model, Mapping):
        for var, truth in model.items():
            if 0 < var <= num_vars:
                values[var] = bool(truth)
    elif isinstance(model, np.ndarray) and model.dtype == bool:
        size = min(model.size, num_vars + 1)
        values[:size] = model[:size]
    else:
        for lit in model:
            lit = int(lit)
            if lit > 0 and lit <= num_vars:
                values[lit] = True
    return values


def expected_base_clause_count(spec: GridSpec) -> int:
    """m*n*(1 + k(k-1)/2) exactly-one clauses plus k*C(m,2)*C(n,2) rectangle clauses."""
    m, n, k = spec.rows, spec.cols, spec.colors
    return m * n * (1 + k * (k - 1) // 2) + k * comb(m, 2, exact=True) * comb(n, 2, exact=True)


def _exactly_one(vm: VarMap) -> List[Clause]:
    k = vm.spec.colors
    clauses = []
    for cls in range(vm.num_classes):
        lits = [vm.class_var(cls, c) for c in range(1, k + 1)]
        clauses.append(tuple(lits))
        clauses.extend((-lits[a], -lits[b]) for a in range(k) for b in range(a + 1, k))
    return clauses


def _rectangle_clauses(vm: VarMap) -> List[Clause]:
    """
    One negative 4-literal clause per color, row pair and column pair.

    Under merging, repeated literals inside a clause collapse (down to a
    unit clause when all four corners share a class) and repeated
    clauses are emitted once, keeping first-occurrence order.
    """
    m, n = vm.spec.rows, vm.spec.cols
    if m < 2 or n < 2:
        return []
    r1, r2 = np.triu_indices(m, 1)
    c1, c2 = np.triu_indices(n, 1)
    cells = vm.cell_vars()
    blocks = []
    for color in range(vm.spec.colors):
        v = cells[:, :, color]
        quad = np.stack([v[r1][:, c1], v[r1][:, c2], v[r2][:, c1], v[r2][:, c2]], axis=-1)
        blocks.append(-quad.reshape(-1, 4))
    lits = np.concatenate(blocks)
    if not vm.merged:
        return [tuple(row) for row in lits.tolist()]

    ordered = np.sort(lits, axis=1)
    distinct = 1 + np.count_nonzero(np.diff(ordered, axis=1), axis=1)
    _, first = np.unique(ordered, axis=0, return_index=True)
    keep = np.sort(first)
    clauses = []
    reduced = set()
    for row, width in zip(lits[keep].tolist(), distinct[keep].tolist()):
        if width == 4:
            clauses.append(tuple(row))
            continue
        clause = tuple(dict.fromkeys(row))
        if frozenset(clause) not in reduced:
            reduced.add(frozenset(clause))
            clauses.append(clause)
    return clauses


def _assemble(vm: VarMap) -> CnfFormula:
    f = CnfFormula(vm.top)
    f.extend(_exactly_one(vm))
    f.extend(_rectangle_clauses(vm))
    return f


def encode_base(spec: GridSpec) -> Tuple[CnfFormula, VarMap]:
    """
    Plain encoding: exactly one color per cell, no monochromatic rectangle.

    Parameters
    ----------
    spec : GridSpec
        Grid dimensions and color count.

    Returns
    -------
    (CnfFormula, VarMap)
        Formula with m*n*k variables and expected_base_clause_count(spec)
        clauses, plus the identity variable map.
    """
    vm = VarMap(spec)
    f = _assemble(vm)
    logger.info("Base encoding %s: %d vars, %d clauses", spec, f.num_vars, len(f))
    return f, vm


def encode_shift_merged(spec: GridSpec, layout: PatternLayout) -> Tuple[CnfFormula, VarMap]:
    """
    Shift-pattern encoding with shift-identified cells sharing variables.

    Only the first-row cells of each subgrid (and, with midgrids, of each
    first subgrid row of a midgrid) get their own variables; every
    shifted copy reuses them.

    Raises
    ------
    LayoutError
        For both-direction layouts or layouts that do not fit the spec.
    """
    if layout.direction == 'both':
        raise LayoutError("Merged encoding needs a single shift direction; use encode_shift_selector")
    layout.validate(spec)
    vm = VarMap(spec, layout)
    f = _assemble(vm)
    logger.info("Merged shift encoding %s (%s): %d classes, %d vars, %d clauses",
                spec, layout.describe(), vm.num_classes, f.num_vars, len(f))
    return f, vm


def encode_shift_selector(spec: GridSpec, layout: PatternLayout) -> Tuple[CnfFormula, VarMap]:
    """
    Shift-pattern encoding where each subgrid picks left or right.

    Every tiled subgrid gets a selector pair (L, R) with L xor R. For a
    cell at offset (a, u) from the subgrid corner and every color:
    L false ties it to first-row offset (u + a) mod z, R false ties it
    to (u - a) mod z.
    """
    if layout.direction != 'both':
        raise LayoutError("Selector encoding needs a both-direction layout")
    layout.validate(spec)
    vm = VarMap(spec, layout)
    z, k = layout.subgrid, spec.colors
    X, Y = layout.blocks(spec)
    selectors = {(I, J): vm.register_aux(2, 'selector') for I in range(X) for J in range(Y)}

    f = _assemble(vm)
    for (I, J), (L, R) in selectors.items():
        r0, c0 = I * z, J * z
        for a in range(1, z):
            for u in range(z):
                t1, t2 = c0 + (u + a) % z, c0 + (u - a) % z
                for color in range(1, k + 1):
                    x = vm.var(r0 + a, c0 + u, color)
                    left, right = vm.var(r0, t1, color), vm.var(r0, t2, color)
                    f.add_clause((-x, left, L))
                    f.add_clause((-left, x, L))
                    f.add_clause((-x, right, R))
                    f.add_clause((-right, x, R))
        f.add_clause((L, R))
        f.add_clause((-L, -R))
    logger.info("Selector shift encoding %s (%s): %d vars, %d clauses",
                spec, layout.describe(), f.num_vars, len(f))
    return f, vm


def add_distribution_constraints(f: CnfFormula, vm: VarMap, d: DistributionSet) -> CnfFormula:
    """
    Require every subgrid's color counts to equal z times the distribution.

    For subgrid (I, J) and color c, exactly d[c, I, J] of the z first-row
    classes take color c. Counts are encoded with sequential counters
    whose auxiliary variables are registered in the VarMap. The formula
    is extended in place and returned.

    Raises
    ------
    LayoutError
        If vm was not built by the merged shift encoder.
    ShapeError
        If d does not match the tiling, color count or subgrid size.
    """
    from pysat.card import CardEnc, EncType

    layout = vm.layout
    if layout is None or layout.direction == 'both':
        raise LayoutError("Distribution constraints need a merged shift encoding")
    X, Y = layout.blocks(vm.spec)
    if d.shape != (X, Y) or d.colors != vm.spec.colors or d.z != layout.subgrid:
        raise ShapeError(f"Distribution {d!r} does not match {vm.spec} with {X}x{Y} {layout.subgrid}-subgrids")
    if np.any(d.values > layout.subgrid):
        raise ShapeError("Distribution entries exceed z")

    first_rows = subgrid_first_row_classes(vm.spec, layout, vm.classes)
    before = len(f)
    for (I, J), row in first_rows.items():
        for color in range(1, vm.spec.colors + 1):
            lits = [vm.class_var(cls, color) for cls in row]
            target = int(d.values[color - 1, I, J])
            if target == 0:
                clauses = [[-lit] for lit in lits]
            elif target == len(lits) and len(set(lits)) == len(lits):
                clauses = [[lit] for lit in lits]
            else:
                enc = CardEnc.equals(lits=lits, bound=target, top_id=vm.top,
                                     encoding=EncType.seqcounter)
                vm.adopt_aux(enc.nv, 'counter')
                clauses = enc.clauses
            f.num_vars = max(f.num_vars, vm.top)
            f.extend(clauses)
    logger.info("Distribution constraints: %d clauses, %d vars", len(f) - before, f.num_vars)
    return f


def coloring_literals(vm: VarMap, c: Coloring) -> List[int]:
    """Positive literal of the color held by each class representative."""
    return [vm.class_var(cls, c[rep]) for cls, rep in enumerate(vm.representatives)]


def add_blocking_clause(f: CnfFormula, vm: VarMap, c: Coloring) -> CnfFormula:
    """
    Forbid one coloring: the clause negates the true color literal of every
    variable class. Extends f in place and returns it.
    """
    f.add_clause([-lit for lit in coloring_literals(vm, c)])
    return f


def decode_model(model: ModelLike, vm: VarMap, spec: Optional[GridSpec] = None) -> Coloring:
    """
    Read the coloring out of a model.

    Parameters
    ----------
    model : mapping, literal sequence or boolean array
        Truth assignment; only cell variables are consulted.
    vm : VarMap
        Variable map the formula was built with.
    spec : GridSpec, optional
        Defaults to vm.spec.

    Raises
    ------
    DecodeError
        If some cell has zero or several true colors.
    """
    spec = spec or vm.spec
    k = spec.colors
    values = model_array(model, vm.num_cell_vars)
    table = values[1:vm.num_cell_vars + 1].reshape(vm.num_classes, k)
    counts = table.sum(axis=1)
    bad = np.nonzero(counts != 1)[0]
    if bad.size:
        i, j = vm.representatives[int(bad[0])]
        raise DecodeError(f"Cell ({i + 1},{j + 1}) has {int(counts[bad[0]])} true colors")
    class_color = table.argmax(axis=1) + 1
    return Coloring(spec, class_color[vm.classes])


def encode(spec: GridSpec, layout: Optional[PatternLayout] = None,
           distribution: Optional[DistributionSet] = None,
           break_symmetry: bool = False) -> Tuple[CnfFormula, VarMap]:
    """
    Pick the encoder a layout calls for: base without a layout, selector
    for both-direction layouts, merged otherwise. A distribution adds
    cardinality constraints on top of the merged encoding.

    With break_symmetry, clauses removing color, row/column and
    transposition symmetries are appended (see break_symmetries). The
    result then only answers sat/unsat; do not enumerate it.
    """
    if layout is None:
        if distribution is not None:
            raise LayoutError("A distribution needs a shift layout")
        f, vm = encode_base(spec)
    elif layout.direction == 'both':
        if distribution is not None:
            raise LayoutError("Distribution constraints need a single shift direction")
        f, vm = encode_shift_selector(spec, layout)
    else:
        f, vm = encode_shift_merged(spec, layout)
        if distribution is not None:
            add_distribution_constraints(f, vm, distribution)
    if break_symmetry:
        from .symmetry_breaking import break_symmetries

        break_symmetries(f, vm)
    return f, vm
