# Canonical forms and isomorphism classes of colorings

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, List, Sequence, Tuple
import logging

from .errors import BudgetExceeded, ShapeError
from .grid import Coloring, GridSpec
from .symmetry import IsoElement

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 2_000_000

Blocks = Tuple[Tuple[int, ...], ...]
Labels = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class CanonicalForm:
    """
    Lexicographically least relabeled member of a coloring's orbit.

    cells is the row-major sequence with colors numbered by first
    appearance; element maps the original coloring onto it.
    """
    rows: int
    cols: int
    cells: Tuple[int, ...]
    element: IsoElement = field(compare=False, hash=False)

    @property
    def key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return self.rows, self.cols, self.cells

    def coloring(self, colors: int) -> Coloring:
        return Coloring(GridSpec(self.rows, self.cols, colors), self.cells)


@dataclass(frozen=True)
class _State:
    order: Tuple[int, ...]
    blocks: Blocks
    labels: Labels
    transpose: bool

    def key(self):
        return self.transpose, frozenset(self.order), self.blocks, self.labels


def _fresh_orderings(groups: Dict[int, List[int]]) -> List[List[int]]:
    """Orders for unlabeled colors: larger groups first, every order of ties."""
    by_count: Dict[int, List[int]] = {}
    for color, cols in groups.items():
        by_count.setdefault(len(cols), []).append(color)
    tiers = [sorted(by_count[n]) for n in sorted(by_count, reverse=True)]
    return [[color for tier in choice for color in tier]
            for choice in product(*(list(permutations(t)) for t in tiers))]


def _expand_row(row: Sequence[int], blocks: Blocks, labels: Dict[int, int]):
    """
    Every least arrangement of one row under the current column blocks.

    Inside a block, labeled colors come first in label order, then the
    unlabeled ones receive the next labels, most frequent first. Ties are
    branched because they change the labels seen by later blocks.
    Returns (row string, refined blocks, labels) triples.
    """
    results = []

    def walk(b, out, refined, labels):
        if b == len(blocks):
            results.append((tuple(out), tuple(refined), labels))
            return
        groups: Dict[int, List[int]] = {}
        for col in blocks[b]:
            groups.setdefault(row[col], []).append(col)
        known = sorted((labels[c], cols) for c, cols in groups.items() if c in labels)
        fresh = {c: cols for c, cols in groups.items() if c not in labels}
        base_out = list(out)
        base_refined = list(refined)
        for label, cols in known:
            base_out.extend([label] * len(cols))
            base_refined.append(tuple(cols))
        orderings = _fresh_orderings(fresh) if fresh else [[]]
        for ordering in orderings:
            new_labels = dict(labels)
            o, r = list(base_out), list(base_refined)
            for color in ordering:
                new_labels[color] = len(new_labels) + 1
                o.extend([new_labels[color]] * len(fresh[color]))
                r.append(tuple(fresh[color]))
            walk(b + 1, o, r, new_labels)

    walk(0, [], [], labels)
    best = min(s for s, _, _ in results)
    return [(s, blocks_, labels_) for s, blocks_, labels_ in results if s == best]


def _count_profile(row: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted(Counter(row).values(), reverse=True))


def canonical_form(c: Coloring, node_budget: int = DEFAULT_NODE_BUDGET) -> CanonicalForm:
    """
    Canonicalize a coloring under row, column and color permutations,
    plus transposition for square grids.

    Rows are placed one at a time. At each depth every surviving state
    (rows chosen so far, ordered column blocks, color labels) is extended
    by every unused row; only extensions producing the least next row
    survive. Identical rows are tried once.

    Parameters
    ----------
    c : Coloring
        Coloring to canonicalize.
    node_budget : int, optional
        Maximum number of (state, row) extensions.

    Returns
    -------
    CanonicalForm
        Equal for two colorings exactly when they are isomorphic.

    Raises
    ------
    BudgetExceeded
        If the search needs more extensions than node_budget.
    """
    spec = c.spec
    grids = {False: [tuple(int(v) for v in r) for r in c.grid]}
    if spec.is_square:
        grids[True] = [tuple(int(v) for v in r) for r in c.grid.T]
    m, n = spec.rows, spec.cols

    # first row: the string depends only on the row's color counts
    profiles = {t: [_count_profile(r) for r in g] for t, g in grids.items()}
    top = max(p for ps in profiles.values() for p in ps)
    states: List[_State] = [_State((), (tuple(range(n)),), (), t)
                            for t in grids if top in profiles[t]]
    first_rows = {t: {i for i, p in enumerate(profiles[t]) if p == top} for t in grids}

    cells: List[int] = []
    nodes = 0
    for depth in range(m):
        best = None
        survivors: Dict[tuple, _State] = {}
        for state in states:
            g = grids[state.transpose]
            used = set(state.order)
            tried = set()
            for r in range(m):
                if r in used or g[r] in tried:
                    continue
                if depth == 0 and r not in first_rows[state.transpose]:
                    continue
                tried.add(g[r])
                nodes += 1
                if nodes > node_budget:
                    raise BudgetExceeded(f"canonical_form of {spec} exceeded {node_budget} nodes")
                for s, blocks, labels in _expand_row(g[r], state.blocks, dict(state.labels)):
                    if best is not None and s > best:
                        continue
                    if best is None or s < best:
                        best = s
                        survivors = {}
                    new = _State(state.order + (r,), blocks, tuple(sorted(labels.items())), state.transpose)
                    survivors.setdefault(new.key(), new)
        cells.extend(best)
        states = list(survivors.values())

    chosen = states[0]
    row_perm = [0] * m
    for pos, r in enumerate(chosen.order):
        row_perm[r] = pos
    col_perm = [0] * n
    for pos, col in enumerate(col for block in chosen.blocks for col in block):
        col_perm[col] = pos
    labels = dict(chosen.labels)
    spare = iter(range(len(labels) + 1, spec.colors + 1))
    color_perm = [labels[color] - 1 if color in labels else next(spare) - 1
                  for color in range(1, spec.colors + 1)]
    element = IsoElement(tuple(row_perm), tuple(col_perm), tuple(color_perm), chosen.transpose)
    logger.debug("canonical_form %s: %d nodes, %d final states", spec, nodes, len(states))
    return CanonicalForm(m, n, tuple(cells), element)


@dataclass
class IsoClass:
    """One isomorphism class within a classified collection."""
    canonical: CanonicalForm
    representative: Coloring
    members: List[int] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.members)


def classify(cs: Sequence[Coloring], node_budget: int = DEFAULT_NODE_BUDGET) -> List[IsoClass]:
    """
    Group colorings by canonical form.

    Parameters
    ----------
    cs : sequence of Coloring
        Colorings sharing one spec.

    Returns
    -------
    list of IsoClass
        Classes in order of first appearance; each keeps the indices of
        its members and its first member as representative.

    Raises
    ------
    ShapeError
        If the colorings do not share a spec.
    """
    if cs and any(c.spec != cs[0].spec for c in cs):
        raise ShapeError("classify needs colorings of a single spec")
    classes: Dict[tuple, IsoClass] = {}
    for index, c in enumerate(cs):
        form = canonical_form(c, node_budget)
        cls = classes.get(form.key)
        if cls is None:
            cls = classes[form.key] = IsoClass(form, c)
        cls.members.append(index)
    logger.info("Classified %d colorings into %d classes", len(cs), len(classes))
    return list(classes.values())


def grid_to_graph(c: Coloring):
    """
    Rook's graph of a square coloring.

    Vertices are 0-based cells (i, j) with a 'color' attribute; two
    vertices are adjacent when they share a row or a column.

    Raises
    ------
    ShapeError
        For non-square grids.
    """
    import networkx as nx

    if not c.spec.is_square:
        raise ShapeError(f"grid_to_graph needs a square grid, got {c.spec}")
    n = c.spec.rows
    graph = nx.Graph()
    for i in range(n):
        for j in range(n):
            graph.add_node((i, j), color=c[i, j])
    for i in range(n):
        for j in range(n):
            for jj in range(j + 1, n):
                graph.add_edge((i, j), (i, jj))
            for ii in range(i + 1, n):
                graph.add_edge((i, j), (ii, j))
    return graph


def graphs_isomorphic(c1: Coloring, c2: Coloring) -> bool:
    """
    Vertex-colored isomorphism of the two rook's graphs, up to a color
    permutation, decided by networkx's VF2 matcher.
    """
    from networkx.algorithms.isomorphism import GraphMatcher

    if c1.spec != c2.spec:
        return False
    g1, g2 = grid_to_graph(c1), grid_to_graph(c2)
    k = c1.spec.colors
    for perm in permutations(range(1, k + 1)):
        def same(a, b, perm=perm):
            return perm[a['color'] - 1] == b['color']
        if GraphMatcher(g1, g2, node_match=same).is_isomorphic():
            return True
    return False
