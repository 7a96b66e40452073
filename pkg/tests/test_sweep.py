import csv

import pytest

from means_toolkit.errors import InvalidInput, UnsupportedOperation
from means_toolkit.harness.sweep import (
    ALL_IDS,
    SweepConfig,
    draw_inputs,
    evaluate_inputs,
    kyfan_sweep_config,
    resolve_ids,
    run_sweep,
)
from means_toolkit.models.kyfan import KYFAN_IDS
from means_toolkit.utils.helpers import CSV_INPUT_COLUMNS, write_sample_csv


def test_resolve_ids():
    assert resolve_ids('all') == ALL_IDS
    assert resolve_ids('eq3, EQ3,EQ16') == ('EQ3', 'EQ15_16_17')
    assert resolve_ids(['EQ11_12', 'eq20']) == ('EQ11', 'EQ20')
    assert set(KYFAN_IDS) <= set(ALL_IDS)
    with pytest.raises(UnsupportedOperation):
        resolve_ids('EQ99')
    with pytest.raises(InvalidInput):
        resolve_ids(' , ')


@pytest.mark.parametrize('overrides', [
    {'samples': 0},
    {'workers': 0},
    {'tolerance': 0.0},
    {'value_range': (2.0, 1.0)},
    {'kyfan_n_range': (0, 3)},
    {'sequence_n_range': (5, 2)},
    {'sign_constraint': 'sideways'},
])
def test_config_validation(overrides):
    with pytest.raises(InvalidInput):
        SweepConfig(ids=('EQ3',), **overrides)


def test_negative_quads_keep_eq14_intact():
    report = run_sweep(SweepConfig(ids='EQ14', samples=30, seed=7, sign_constraint='negative'))
    summary = report.summaries['EQ14']
    assert report.passed
    assert summary.samples_run == 30
    assert summary.violations == []
    assert report.to_dict()['config']['sign_constraint'] == 'Negative'


def test_zero_quads_are_equality_cases_for_eq13():
    report = run_sweep(SweepConfig(ids='EQ13', samples=25, seed=5, sign_constraint='zero'))
    summary = report.summaries['EQ13']
    assert summary.equality_cases == 25
    assert report.total_violations == 0


def test_two_point_kyfan_sweep_is_all_equality_for_eq20():
    report = run_sweep(kyfan_sweep_config(samples=20, seed=1, n_range=(2, 2)))
    assert report.summaries['EQ20'].equality_cases == 20
    assert report.passed


def test_sequence_sweep():
    report = run_sweep(SweepConfig(ids='EQ15', samples=50, sequence_n_range=(1, 5000)))
    summary = report.summaries['EQ15_16_17']
    assert summary.samples_run == 50
    assert report.passed


def test_report_does_not_depend_on_worker_count():
    ids = 'EQ3,EQ8,EQ13,EQ14,EQ18,EQ23'
    serial = run_sweep(SweepConfig(ids=ids, samples=40, seed=9, workers=1))
    parallel = run_sweep(SweepConfig(ids=ids, samples=40, seed=9, workers=4))
    assert serial.to_dict(include_wall_time=False) == parallel.to_dict(include_wall_time=False)
    assert 'wall_time_s' in serial.to_dict()


def test_minimum_margin_is_replayable():
    config = SweepConfig(ids='EQ4', samples=30, seed=2)
    summary = run_sweep(config).summaries['EQ4']
    index = summary.argmin_index
    inputs = draw_inputs('EQ4', config, index)
    assert inputs == summary.argmin_inputs
    assert evaluate_inputs('EQ4', inputs, config.tolerance).margin == summary.min_margin


def test_rows_and_csv(tmp_path):
    rows = []
    run_sweep(SweepConfig(ids='EQ3,EQ19', samples=6, seed=4, workers=2), rows)
    assert [(r[0], r[1]) for r in rows] == [('EQ3', i) for i in range(6)] + [('EQ19', i) for i in range(6)]

    path = tmp_path / 'out' / 'samples.csv'
    write_sample_csv(path, rows)
    with open(path, newline='') as handle:
        records = list(csv.reader(handle))
    assert records[0] == ['id', 'sample_index', *CSV_INPUT_COLUMNS, 'margin', 'verdict']
    assert len(records) == 13
    kyfan_row = dict(zip(records[0], records[7]))
    assert kyfan_row['id'] == 'EQ19'
    assert ';' in kyfan_row['x'] or float(kyfan_row['x']) > 0
    assert kyfan_row['a'] == ''
