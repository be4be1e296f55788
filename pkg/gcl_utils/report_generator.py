import datetime
import html
import logging
from typing import Any, Dict, List, Sequence

try:
    from ..core.isomorphism import IsoClass
except ImportError:
    import os
    import sys
    sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
    from core.isomorphism import IsoClass

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ['recipe', 'step', 'expected', 'observed', 'ok', 'seconds']


def classification_report(classes: Sequence[IsoClass]) -> str:
    """
    Text report of an isomorphism classification.

    Lists the class count, then for each class its size and its
    representative in the "m n k" coloring format.
    """
    from .data_io import format_coloring

    total = sum(cls.size for cls in classes)
    lines = [f"{len(classes)} classes over {total} colorings"]
    for idx, cls in enumerate(classes, start=1):
        lines.append('')
        lines.append(f"# class {idx}: {cls.size} colorings")
        lines.append(format_coloring(cls.representative).rstrip('\n'))
    return '\n'.join(lines) + '\n'


def repro_table(results: List[Dict[str, Any]]):
    """
    Collect reproduction step results into a DataFrame.

    Parameters
    ----------
    results : list of dict
        One dict per recipe step with the TABLE_COLUMNS keys.

    Returns
    -------
    pandas.DataFrame
    """
    try:
        import pandas as pd
    except ImportError:
        raise ImportError("pandas is required for result tables. Install with: pip install pandas")

    df = pd.DataFrame(results, columns=TABLE_COLUMNS)
    df['seconds'] = df['seconds'].astype(float).round(3)
    return df


def write_repro_table(file_path: str, results: List[Dict[str, Any]]) -> str:
    """Write the result table as .xlsx or .csv (by extension)."""
    df = repro_table(results)
    if file_path.lower().endswith('.xlsx'):
        df.to_excel(file_path, index=False, engine='openpyxl')
    else:
        df.to_csv(file_path, index=False)
    logger.info("Written %d result rows to %s", len(df), file_path)
    return file_path


def generate_html_report(file_path: str, results: List[Dict[str, Any]],
                         title: str = "Grid Coloring Lab reproduction") -> str:
    """
    Generate a standalone HTML summary of a reproduction run.

    Parameters
    ----------
    file_path : str
        Path to save the HTML file.
    results : list of dict
        Step results as produced by the repro harness.
    title : str, optional
        Page heading.

    Returns
    -------
    str
        The path written.
    """
    passed = sum(1 for r in results if r['ok'])
    rows_html = ''
    for r in results:
        css = 'pass' if r['ok'] else 'fail'
        rows_html += f"""
        <tr class="{css}">
            <td>{html.escape(str(r['recipe']))}</td>
            <td>{html.escape(str(r['step']))}</td>
            <td>{html.escape(str(r['expected']))}</td>
            <td>{html.escape(str(r['observed']))}</td>
            <td>{'yes' if r['ok'] else 'NO'}</td>
            <td>{float(r['seconds']):.3f}</td>
        </tr>"""

    html_content = f"""<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>{html.escape(title)}</title>
    <style>
        body {{ font-family: 'Segoe UI', Tahoma, Geneva, Verdana, sans-serif; margin: 40px; color: #333; }}
        h1 {{ color: #2c3e50; border-bottom: 2px solid #3498db; padding-bottom: 10px; }}
        .summary {{ background: #f8f9fa; padding: 15px; border-radius: 5px; margin-bottom: 20px; }}
        table {{ border-collapse: collapse; width: 100%; }}
        th, td {{ border: 1px solid #ddd; padding: 8px 12px; text-align: left; }}
        th {{ background-color: #3498db; color: white; }}
        tr.pass td {{ background-color: #eafaf1; }}
        tr.fail td {{ background-color: #fdedec; font-weight: bold; }}
        .footer {{ margin-top: 30px; font-size: 0.8em; color: #7f8c8d; }}
    </style>
</head>
<body>
    <h1>{html.escape(title)}</h1>
    <div class="summary">{passed} of {len(results)} steps matched their expected outcome.</div>
    <table>
        <tr>
            <th>Recipe</th><th>Step</th><th>Expected</th><th>Observed</th><th>OK</th><th>Seconds</th>
        </tr>{rows_html}
    </table>
    <div class="footer">Generated {datetime.datetime.now().strftime('%Y-%m-%d %H:%M:%S')}</div>
</body>
</html>
"""
    with open(file_path, 'w', encoding='utf-8') as f:
        f.write(html_content)
    logger.info("Report written to %s", file_path)
    return file_path
