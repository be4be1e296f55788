# DIMACS utilities for Grid Coloring Lab
# Reads/writes DIMACS CNF, external solver output and the sidecar variable map
# used to decode external models offline.

import os
from typing import Dict, Iterable, List, Optional, Tuple

from core.encoder import CnfFormula, VarMap, decode_model
from core.errors import FormatError
from core.grid import Coloring, GridSpec


def write_dimacs(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    """
    Serialize a formula as DIMACS CNF text.

    Examples
    --------
    >>> write_dimacs(CnfFormula(2, [(1, -2)]))
    'p cnf 2 1\\n1 -2 0\\n'
    """
    lines = [f"c {line}" for line in comments]
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    lines.extend(' '.join(map(str, clause)) + ' 0' for clause in f.clauses)
    return '\n'.join(lines) + '\n'


def read_dimacs(text: str) -> CnfFormula:
    """
    Parse DIMACS CNF text.

    Clauses may span lines; each ends at a 0. Comment lines start with
    'c' (or '%', as some benchmark files do).

    Raises
    ------
    FormatError
        Missing or malformed header, literal out of range, clause count
        mismatch or an unterminated clause.
    """
    num_vars = num_clauses = None
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in 'c%':
            continue
        if line.startswith('p'):
            parts = line.split()
            if len(parts) != 4 or parts[1] != 'cnf' or num_vars is not None:
                raise FormatError(f"Line {lineno}: bad header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"Line {lineno}: bad header {line!r}") from None
            continue
        if num_vars is None:
            raise FormatError(f"Line {lineno}: clause before 'p cnf' header")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise FormatError(f"Line {lineno}: bad literal {token!r}") from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > num_vars:
                raise FormatError(f"Line {lineno}: literal {lit} exceeds {num_vars} variables")
            else:
                current.append(lit)
    if num_vars is None:
        raise FormatError("Missing 'p cnf' header")
    if current:
        raise FormatError("Last clause is not terminated by 0")
    if len(clauses) != num_clauses:
        raise FormatError(f"Header announces {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, clauses)


def read_dimacs_model(text: str) -> Dict[int, bool]:
    """
    Parse the 'v' lines of solver output into {var: truth}.

    Examples
    --------
    >>> read_dimacs_model("v 1 -2 0")
    {1: True, 2: False}
    """
    model: Dict[int, bool] = {}
    terminated = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line.startswith('v'):
            continue
        for token in line[1:].split():
            try:
                lit = int(token)
            except ValueError:
                raise FormatError(f"Bad model literal {token!r}") from None
            if lit == 0:
                terminated = True
                break
            model[abs(lit)] = lit > 0
    if model and not terminated:
        raise FormatError("Model is not terminated by 0")
    return model


def parse_solver_output(text: str) -> Tuple[str, Optional[Dict[int, bool]]]:
    """Status ('sat', 'unsat', 'unknown') and model from competition-style output."""
    status = 'unknown'
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith('s '):
            answer = line[2:].strip().upper()
            if answer == 'SATISFIABLE':
                status = 'sat'
            elif answer == 'UNSATISFIABLE':
                status = 'unsat'
    model = read_dimacs_model(text) if status == 'sat' else None
    return status, model


def write_varmap(vm: VarMap) -> str:
    """
    Sidecar map text: one 'var cell_i cell_j color' line per (cell, color)
    pair with 1-based cells, then auxiliary ranges as comments.
    """
    spec = vm.spec
    lines = [f"c grid {spec.rows} {spec.cols} {spec.colors}",
             f"c classes {vm.num_classes} cell_vars {vm.num_cell_vars} top {vm.top}"]
    for i in range(spec.rows):
        for j in range(spec.cols):
            for color in range(1, spec.colors + 1):
                lines.append(f"{vm.var(i, j, color)} {i + 1} {j + 1} {color}")
    for label, ids in vm.aux.items():
        lines.append(f"c aux {label} {ids[0]}-{ids[-1]} ({len(ids)})")
    return '\n'.join(lines) + '\n'


def read_varmap(text: str) -> Tuple[GridSpec, Dict[Tuple[int, int, int], int]]:
    """Parse sidecar text into the spec and {(i, j, color): var} with 1-based cells."""
    spec = None
    mapping: Dict[Tuple[int, int, int], int] = {}
    for raw in text.splitlines():
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == 'c':
            if len(parts) == 5 and parts[1] == 'grid':
                spec = GridSpec(int(parts[2]), int(parts[3]), int(parts[4]))
            continue
        if len(parts) != 4:
            raise FormatError(f"Bad map line {raw!r}")
        var, i, j, color = map(int, parts)
        mapping[(i, j, color)] = var
    if spec is None:
        raise FormatError("Map file lacks its 'c grid m n k' line")
    return spec, mapping


def decode_external(model: Dict[int, bool], varmap_text: str) -> Coloring:
    """Decode an external solver's model using only the sidecar map."""
    spec, mapping = read_varmap(varmap_text)
    rows = []
    for i in range(1, spec.rows + 1):
        row = []
        for j in range(1, spec.cols + 1):
            true_colors = [c for c in range(1, spec.colors + 1) if model.get(mapping[(i, j, c)], False)]
            if len(true_colors) != 1:
                raise FormatError(f"Cell ({i},{j}) has {len(true_colors)} true colors in the model")
            row.append(true_colors[0])
        rows.append(row)
    return Coloring(spec, rows)


def save_encoding(prefix: str, f: CnfFormula, vm: VarMap, comments: Iterable[str] = ()) -> Tuple[str, str]:
    """Write PREFIX.cnf and PREFIX.map; returns both paths."""
    directory = os.path.dirname(prefix)
    if directory:
        os.makedirs(directory, exist_ok=True)
    cnf_path, map_path = f"{prefix}.cnf", f"{prefix}.map"
    with open(cnf_path, 'w', encoding='utf-8') as fh:
        fh.write(write_dimacs(f, comments))
    with open(map_path, 'w', encoding='utf-8') as fh:
        fh.write(write_varmap(vm))
    return cnf_path, map_path
