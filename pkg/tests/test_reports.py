# tests/test_reports.py

import json

import numpy as np

from config import REPORT_SETTINGS, SCHEMA_VERSION
from experiments import ExperimentResult, make_row
from reports import format_cell, to_jsonable, write_failure, write_reports


def _result(config):
    result = ExperimentResult(config.experiment)
    result.rows.append(make_row(config, 'one', lhs=1.0, rhs=1.0, ratio=1.0, tolerance=1e-9,
                                passed=True, p=4.0, q=2.0, grid_M=64))
    result.rows.append(make_row(config, 'z', lhs=np.float64(0.5), passed=None, p=4.0))
    result.diagnostics['lam'] = 1 + 0.5j
    return result


def test_format_cell():
    assert format_cell(None) == ''
    assert format_cell('corpus-1') == 'corpus-1'
    assert format_cell(np.int64(64)) == '64'


def test_to_jsonable_converts_numpy_and_complex():
    data = to_jsonable({'z': 1 + 2j, 'array': np.arange(2), 'flag': np.bool_(True), 'bad': float('nan')})
    assert data == {'z': [1.0, 2.0], 'array': [0, 1], 'flag': True, 'bad': 'nan'}
    json.dumps(data)


def test_write_reports(make_config, tmp_path):
    config = make_config('duality', p=4.0)
    paths = write_reports(_result(config), config, str(tmp_path))

    with open(paths['csv'], encoding='utf-8') as f:
        lines = f.read().splitlines()
    assert lines[0] == ','.join(REPORT_SETTINGS['csv_columns'])
    assert len(lines) == 3
    assert lines[1].startswith('duality,')
    assert ',one,' in lines[1]

    with open(paths['json'], encoding='utf-8') as f:
        report = json.load(f)
    assert report['schema_version'] == SCHEMA_VERSION
    assert report['config']['p'] == 4.0
    assert report['all_pass'] is True
    assert report['ledger'] is None
    assert report['ledger_conditional'] is False
    assert report['diagnostics']['lam'] == [1.0, 0.5]
    assert report['rows'][1]['pass'] is None


def test_write_failure(tmp_path):
    try:
        raise ValueError('격자가 너무 작습니다')
    except ValueError as e:
        path = write_failure('duality', e, str(tmp_path))
    with open(path, encoding='utf-8') as f:
        record = json.load(f)
    assert record['experiment'] == 'duality'
    assert record['error_type'] == 'ValueError'
    assert '격자' in record['message']
    assert record['traceback']
