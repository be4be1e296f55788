# Data I/O module for Grid Coloring Lab
# Reads/writes colorings and color distributions in text, Excel and .mat formats

import logging
import os
from typing import List, Optional

import numpy as np

try:
    from ..core.distribution import DistributionSet
    from ..core.errors import FormatError, ShapeError
    from ..core.grid import Coloring, GridSpec
except ImportError:
    import sys
    sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
    from core.distribution import DistributionSet
    from core.errors import FormatError, ShapeError
    from core.grid import Coloring, GridSpec

logger = logging.getLogger(__name__)


def _blocks(text: str) -> List[List[str]]:
    """Split text into blocks of non-empty, non-comment lines separated by blank lines."""
    blocks, current = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith('#'):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        current.append(line)
    if current:
        blocks.append(current)
    return blocks


def _parse_coloring_lines(lines: List[str]) -> Coloring:
    header = lines[0].split()
    if len(header) != 3:
        raise FormatError(f"Coloring header must be 'm n k', got {lines[0]!r}")
    try:
        m, n, k = (int(x) for x in header)
        rows = [[int(x) for x in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"Non-integer entry in coloring: {exc}") from None
    if len(rows) != m or any(len(r) != n for r in rows):
        raise FormatError(f"Coloring body does not have {m} rows of {n} entries")
    try:
        return Coloring(GridSpec(m, n, k), rows)
    except ShapeError as exc:
        raise FormatError(str(exc)) from None


def parse_coloring(text: str) -> Coloring:
    """
    Parse one coloring: a line "m n k" followed by m lines of n colors.

    Examples
    --------
    >>> parse_coloring("1 3 2\\n1 2 1\\n").to_rows()
    [[1, 2, 1]]
    """
    colorings = parse_colorings(text)
    if len(colorings) != 1:
        raise FormatError(f"Expected one coloring, found {len(colorings)}")
    return colorings[0]


def parse_colorings(text: str) -> List[Coloring]:
    """Parse colorings separated by blank lines ('#' starts a comment line)."""
    return [_parse_coloring_lines(block) for block in _blocks(text)]


def format_coloring(c: Coloring) -> str:
    lines = [f"{c.spec.rows} {c.spec.cols} {c.spec.colors}"]
    lines += [' '.join(str(int(v)) for v in row) for row in c.grid]
    return '\n'.join(lines) + '\n'


def format_colorings(cs: List[Coloring]) -> str:
    return '\n'.join(format_coloring(c) for c in cs)


def parse_ascii(text: str, colors: Optional[int] = None) -> Coloring:
    """Read the ascii rendering back (digits 1..9, then letters)."""
    from visualization.plot_utils import symbol_color

    try:
        rows = [[symbol_color(ch) for ch in line.strip()] for line in text.splitlines() if line.strip()]
        return Coloring.from_rows(rows, colors)
    except (ShapeError, ValueError) as exc:
        raise FormatError(f"Bad ascii grid: {exc}") from None


def read_coloring(file_path: str) -> Coloring:
    """
    Read a single coloring from a text file.

    Raises
    ------
    FileNotFoundError
        If the file does not exist.
    FormatError
        If the file is not in the "m n k" format.
    """
    if not os.path.exists(file_path):
        raise FileNotFoundError(f"File not found: {file_path}")
    with open(file_path, 'r', encoding='utf-8') as f:
        return parse_coloring(f.read())


def read_colorings(file_path: str) -> List[Coloring]:
    """Read every coloring stored in a text file."""
    if not os.path.exists(file_path):
        raise FileNotFoundError(f"File not found: {file_path}")
    with open(file_path, 'r', encoding='utf-8') as f:
        return parse_colorings(f.read())


def write_coloring(file_path: str, c: Coloring) -> None:
    write_colorings(file_path, [c])


def write_colorings(file_path: str, cs: List[Coloring]) -> None:
    with open(file_path, 'w', encoding='utf-8') as f:
        f.write(format_colorings(cs))
    logger.info("Written %d colorings to %s", len(cs), file_path)


def parse_distribution(text: str, z: int) -> DistributionSet:
    """
    Parse k blocks of x lines of y integers, blocks separated by blank lines.

    Parameters
    ----------
    text : str
        Distribution text; block c holds the matrix of color c.
    z : int
        Subgrid size the distribution refers to.
    """
    blocks = _blocks(text)
    if not blocks:
        raise FormatError("Distribution text is empty")
    try:
        mats = [[[int(x) for x in line.split()] for line in block] for block in blocks]
    except ValueError as exc:
        raise FormatError(f"Non-integer entry in distribution: {exc}") from None
    shapes = {(len(mat), len(mat[0])) for mat in mats}
    if len(shapes) != 1 or any(len(row) != len(mat[0]) for mat in mats for row in mat):
        raise FormatError("Distribution blocks do not share one rectangular shape")
    try:
        return DistributionSet(np.array(mats, dtype=np.int64), z)
    except ShapeError as exc:
        raise FormatError(str(exc)) from None


def format_distribution(d: DistributionSet) -> str:
    blocks = ['\n'.join(' '.join(str(int(v)) for v in row) for row in mat) for mat in d.values]
    return '\n\n'.join(blocks) + '\n'


def read_distribution(file_path: str, z: int) -> DistributionSet:
    if not os.path.exists(file_path):
        raise FileNotFoundError(f"File not found: {file_path}")
    with open(file_path, 'r', encoding='utf-8') as f:
        return parse_distribution(f.read(), z)


def write_distribution(file_path: str, d: DistributionSet) -> None:
    with open(file_path, 'w', encoding='utf-8') as f:
        f.write(format_distribution(d))
    logger.info("Written %d color matrices to %s", d.colors, file_path)


def write_distribution_xlsx(file_path: str, d: DistributionSet) -> None:
    """
    Write a distribution to an Excel workbook, one sheet per color.

    Parameters
    ----------
    file_path : str
        Output .xlsx path.
    d : DistributionSet
        Distribution to write.
    """
    try:
        import pandas as pd
    except ImportError:
        raise ImportError("pandas is required to write Excel files. Install with: pip install pandas openpyxl")

    x, y = d.shape
    with pd.ExcelWriter(file_path, engine='openpyxl') as writer:
        for color in range(1, d.colors + 1):
            df = pd.DataFrame(d.matrix(color), index=[f'R{i + 1}' for i in range(x)],
                              columns=[f'C{j + 1}' for j in range(y)])
            df.to_excel(writer, sheet_name=f'color{color}')
        pd.DataFrame({'z': [d.z], 'k': [d.colors]}).to_excel(writer, sheet_name='info', index=False)
    logger.info("Written %d color matrices to %s", d.colors, file_path)


def read_distribution_xlsx(file_path: str) -> DistributionSet:
    """Read a workbook written by write_distribution_xlsx."""
    if not os.path.exists(file_path):
        raise FileNotFoundError(f"File not found: {file_path}")
    try:
        import pandas as pd
    except ImportError:
        raise ImportError("pandas is required to read Excel files. Install with: pip install pandas openpyxl")

    sheets = pd.read_excel(file_path, sheet_name=None, index_col=0, engine='openpyxl')
    info = pd.read_excel(file_path, sheet_name='info', engine='openpyxl')
    colors = sorted((name for name in sheets if name.startswith('color')), key=lambda s: int(s[5:]))
    mats = [sheets[name].to_numpy(dtype=np.int64) for name in colors]
    return DistributionSet(np.array(mats), int(info['z'].iloc[0]))


def write_distribution_mat(file_path: str, d: DistributionSet, var_name: str = 'v') -> None:
    """
    Write a distribution to a MATLAB .mat file as a k x x x y array plus z.
    """
    try:
        from scipy.io import savemat
    except ImportError:
        raise ImportError("scipy is required to write .mat files. Install with: pip install scipy")

    savemat(file_path, {var_name: d.values, 'z': d.z})
    logger.info("Written %d color matrices to %s", d.colors, file_path)


def read_distribution_mat(file_path: str, var_name: str = 'v') -> DistributionSet:
    if not os.path.exists(file_path):
        raise FileNotFoundError(f"File not found: {file_path}")
    from scipy.io import loadmat

    data = loadmat(file_path)
    values = np.asarray(data[var_name], dtype=np.int64)
    if values.ndim == 2:
        values = values[None, :, :]
    return DistributionSet(values, int(np.asarray(data['z']).ravel()[0]))
