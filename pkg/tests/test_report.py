"""
Tests for the persisted report artifacts and the AFR tables.
"""
# Standard Imports
import json
import re
import xml.etree.ElementTree as ET

# Third-Party Imports
import pandas as pd
import pytest

# Project-Specific Imports
from cslb.attacks import AttackConfig
from cslb.defenses import DefenseConfig
from cslb.errors import LabError, ReportFormatError
from cslb.harness import ExperimentReport, ExperimentSpec, CellResult, emit_report, load_report, afr_table, run_grid
from cslb.harness.charts import SweepChart

HEADER = 'defense,attack,M,step_factor,afr,mean_queries,n'
SVG = '{http://www.w3.org/2000/svg}'


def _cell(defense: str, attack: str, afr, M: int = 1, step_factor: float = 1.0, error=None) -> CellResult:
    mask = [True, True, False]
    results = [{'kind': attack, 'success': False, 'queries_used': 40, 'linf': 0.1, 'distance': 0.1,
                'init_failure': False, 'attacker_success': False}] * 2 + [None]
    return CellResult(defense=defense, attack=attack, M=M, step_factor=step_factor, afr=afr,
                      mean_queries=None if afr == 1.0 else 12.5, median_queries=None, n=2,
                      defended_correct=mask, undefended_correct=[True, True, True], results=results,
                      defense_config={'kind': defense}, attack_config={'kind': attack}, error=error)


def _curve(parameter: str = 'alpha'):
    return {
        'parameter': parameter,
        'fixed': {'k': 10},
        'base_defense': {'kind': 'counter-sample'},
        'undefended_clean_accuracy': 0.99,
        'points': [
            {'value': v, 'defense': f'cs-{v}', 'clean_accuracy': 0.99 - v / 10,
             'afr': {'nes': v, 'simba': v / 2}, 'mean_queries': {'nes': 10.0, 'simba': 20.0}, 'errors': {}}
            for v in (0.0, 0.1, 1.0)
        ],
    }


@pytest.fixture
def report():
    cells = [_cell('none', 'nes', 0.0), _cell('none', 'simba', 0.5),
             _cell('snd', 'nes', 1.0), _cell('snd', 'simba', None, error='RuntimeError: boom')]
    return ExperimentReport(metadata={'seed': 0, 'n': 3}, clean_accuracy={'none': 1.0, 'snd': 0.97},
                            sections={'grid': cells, 'adaptive_averaging': [_cell('snd', 'nes', 0.5, M=5)]},
                            sweeps={'alpha': _curve()}, timings={'grid': 1.5})


# =============================================================================
# Artifacts
# =============================================================================

class TestEmitReport:

    def test_artifacts(self, report, tmp_path):
        written = emit_report(report, tmp_path / 'out')
        assert sorted(p.name for p in written) == ['grid.csv', 'report.json', 'sweep_alpha.svg', 'timing.json']

    def test_empty_grid_is_header_only(self, tmp_path):
        emit_report(ExperimentReport(metadata={}), tmp_path)
        assert (tmp_path / 'grid.csv').read_text().splitlines() == [HEADER]

    def test_csv_matches_json(self, report, tmp_path):
        emit_report(report, tmp_path)
        df = pd.read_csv(tmp_path / 'grid.csv')
        data = json.loads((tmp_path / 'report.json').read_text())
        cells = data['sections']['grid'] + data['sections']['adaptive_averaging']
        assert list(df.columns) == HEADER.split(',')
        assert len(df) == len(cells)
        for (_, row), cell in zip(df.iterrows(), cells):
            assert row['defense'] == cell['defense']
            if cell['afr'] is None:
                assert pd.isna(row['afr'])
            else:
                assert row['afr'] == pytest.approx(cell['afr'])

    def test_timings_stay_out_of_report_json(self, report, tmp_path):
        emit_report(report, tmp_path)
        assert 'timings' not in json.loads((tmp_path / 'report.json').read_text())
        assert json.loads((tmp_path / 'timing.json').read_text()) == {'grid': 1.5}

    def test_repeated_grid_runs_write_identical_files(self, trained_mlp, blob_split, tmp_path):
        _, test_set = blob_split
        spec = ExperimentSpec(model=trained_mlp, dataset=test_set,
                              defenses=[DefenseConfig(kind='snd', sigma=0.01)],
                              attacks=[AttackConfig(kind='nes', epsilon=0.2, population=4)],
                              n=4, budget=20, seed=3, threads=1)
        emit_report(run_grid(spec), tmp_path / 'a')
        emit_report(run_grid(spec), tmp_path / 'b')
        for name in ('report.json', 'grid.csv'):
            assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes(), name

    def test_unwritable_directory(self, report, tmp_path):
        blocker = tmp_path / 'file'
        blocker.write_text('not a directory')
        with pytest.raises(LabError):
            emit_report(report, blocker)


class TestLoadReport:

    def test_round_trip(self, report, tmp_path):
        emit_report(report, tmp_path)
        loaded = load_report(tmp_path)
        assert loaded.to_dict() == report.to_dict()
        assert loaded.cells('grid')[3].error == 'RuntimeError: boom'

    def test_missing(self, tmp_path):
        with pytest.raises(ReportFormatError, match='No report.json'):
            load_report(tmp_path)

    def test_corrupt_json_names_the_line(self, tmp_path):
        (tmp_path / 'report.json').write_text('{\n  "metadata": {,\n}')
        with pytest.raises(ReportFormatError, match='line 2'):
            load_report(tmp_path)

    def test_missing_metadata(self, tmp_path):
        (tmp_path / 'report.json').write_text('{"sections": {}}')
        with pytest.raises(ReportFormatError, match='Malformed'):
            load_report(tmp_path)


# =============================================================================
# Charts and tables
# =============================================================================

class TestSweepChart:

    def test_one_tagged_series_per_line(self, tmp_path):
        path = SweepChart(_curve()).save(tmp_path / 'alpha.svg')
        ids = set(re.findall(r'id="(series_[^"]+)"', path.read_text()))
        assert ids == {'series_clean_accuracy', 'series_AFR_nes', 'series_AFR_simba'}

    def test_one_path_per_series_group(self, tmp_path):
        chart = SweepChart(_curve())
        root = ET.parse(chart.save(tmp_path / 'alpha.svg')).getroot()
        groups = [g for g in root.iter(f'{SVG}g') if g.get('id', '').startswith('series_')]
        assert len(groups) == len(chart.series) == 3
        for group in groups:
            assert len(list(group.iter(f'{SVG}path'))) == 1, group.get('id')

    def test_renders_are_byte_identical(self, tmp_path):
        first = SweepChart(_curve('k')).save(tmp_path / 'a.svg')
        second = SweepChart(_curve('k')).save(tmp_path / 'b.svg')
        assert first.read_bytes() == second.read_bytes()


class TestAfrTable:

    def test_grid_table(self, report):
        table = afr_table(report)
        assert list(table.index) == ['none', 'snd']
        assert list(table.columns) == ['nes', 'simba', 'clean ACC']
        assert table.loc['none', 'simba'] == 0.5
        assert pd.isna(table.loc['snd', 'simba'])
        assert table.loc['snd', 'clean ACC'] == 0.97

    def test_averaging_table(self, report):
        table = afr_table(report, 'adaptive_averaging')
        assert table.loc['snd', ('nes', 5)] == 0.5

    def test_empty_section(self, report):
        assert afr_table(report, 'adaptive_stepsize').empty
