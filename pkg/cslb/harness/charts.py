"""
charts.py

Standalone SVG line charts of sweep curves: one line per attack AFR plus the
defended clean accuracy. Every line is a single <path> inside a group with
the id `series_<name>`.
"""
# Standard Imports
from pathlib import Path
from typing import Any, Dict

# Third-Party Imports
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import pandas as pd

# Fixed id salt keeps repeated renders byte-identical
plt.rcParams['svg.hashsalt'] = 'cslb'


class SweepChart():

    def __init__(self, curve: Dict[str, Any]):
        self._curve = curve
        self._process_curve()

    def _process_curve(self):
        rows = []
        for point in self._curve['points']:
            row = {'value': point['value'], 'clean_accuracy': point['clean_accuracy']}
            row.update({f'AFR {attack}': afr for attack, afr in point['afr'].items()})
            rows.append(row)
        self._df = pd.DataFrame(rows).sort_values('value')

    @property
    def series(self):
        return [column for column in self._df.columns if column != 'value']

    def _render_chart(self):
        parameter = self._curve['parameter']
        fixed = ', '.join(f'{k}={v:g}' for k, v in self._curve['fixed'].items())

        fig, ax = plt.subplots(figsize=(6, 4))
        for column in self.series:
            line, = ax.plot(self._df['value'], self._df[column], label=column)
            line.set_gid(f"series_{column.replace(' ', '_')}")
        ax.set_xlabel(parameter)
        ax.set_ylabel('rate')
        ax.set_ylim(-0.05, 1.05)
        ax.set_title(f'Counter-sample sweep over {parameter} ({fixed})')
        ax.legend(loc='best', fontsize='small')
        return fig

    def save(self, path) -> Path:
        path = Path(path)
        fig = self._render_chart()
        try:
            fig.savefig(path, format='svg', metadata={'Date': None})
        finally:
            plt.close(fig)
        return path
