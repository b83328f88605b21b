"""
report.py

Persisted report artifacts: grid.csv (one row per cell of every section),
report.json (the full structured report), timing.json (wall time, kept out of
report.json so reports stay byte-identical) and one SVG per sweep.
"""
# Standard Imports
import json
from pathlib import Path
from typing import List

# Third-Party Imports
import pandas as pd

# Project-Specific Imports
from cslb.app_logger import logger
from cslb.errors import LabError, ReportFormatError
from cslb.harness.ExperimentReport import ExperimentReport, CSV_COLUMNS
from cslb.harness.charts import SweepChart


def grid_frame(report: ExperimentReport) -> pd.DataFrame:
    rows = [cell.row() for cell in report.cells()]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_sweep_charts(report: ExperimentReport, directory) -> List[Path]:
    directory = Path(directory)
    return [SweepChart(curve).save(directory / f'sweep_{name}.svg') for name, curve in sorted(report.sweeps.items())]


def emit_report(report: ExperimentReport, directory) -> List[Path]:
    """
    Write the report artifacts into `directory` (created if needed).

    Returns
    -------
    list of Path
        Files written.
    """
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)

        csv_path = directory / 'grid.csv'
        grid_frame(report).to_csv(csv_path, index=False)

        json_path = directory / 'report.json'
        json_path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + '\n', encoding='utf-8')

        timing_path = directory / 'timing.json'
        timing_path.write_text(json.dumps(report.timings, indent=2, sort_keys=True) + '\n', encoding='utf-8')

        written = [csv_path, json_path, timing_path] + write_sweep_charts(report, directory)
    except OSError as e:
        raise LabError(f"Could not write report to {e.filename or directory}: {e.strerror or e}") from e

    logger.info(f"Report written to {directory}: {[p.name for p in written]}")
    return written


def load_report(directory) -> ExperimentReport:
    path = Path(directory) / 'report.json'
    if not path.is_file():
        raise ReportFormatError(f"No report.json in {directory}")
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise ReportFormatError(f"Corrupt report {path}: {e.msg} at line {e.lineno} column {e.colno}") from e
    try:
        return ExperimentReport.from_dict(data)
    except (KeyError, TypeError, AttributeError) as e:
        raise ReportFormatError(f"Malformed report {path}: {e}") from e


SECTION_COLUMNS = {
    'grid': ['attack'],
    'adaptive_averaging': ['attack', 'M'],
    'adaptive_stepsize': ['attack', 'step_factor'],
}


def afr_table(report: ExperimentReport, section: str = 'grid') -> pd.DataFrame:
    """Defenses x attacks AFR pivot of one section, rows in report order."""
    df = pd.DataFrame([cell.row() for cell in report.cells(section)], columns=CSV_COLUMNS)
    if df.empty:
        return pd.DataFrame()
    df['afr'] = df['afr'].astype(float)

    pivot_df = df.pivot_table(index='defense', columns=SECTION_COLUMNS[section], values='afr',
                              aggfunc='first', dropna=False)
    defenses = list(dict.fromkeys(df['defense']))
    pivot_df = pivot_df.reindex(index=defenses)

    if section == 'grid':
        pivot_df = pivot_df.reindex(columns=list(dict.fromkeys(df['attack'])))
        if report.clean_accuracy:
            pivot_df['clean ACC'] = [report.clean_accuracy.get(d) for d in defenses]
    return pivot_df
