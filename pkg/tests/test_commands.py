# tests/test_commands.py

import json
import os

import pytest

import commands
from commands import EXIT_ERROR, EXIT_OK, RunExperimentCommand, RunGroupCommand
from main import build_parser, overrides_from


@pytest.fixture(autouse=True)
def no_settings(monkeypatch):
    monkeypatch.setattr(commands, 'set_last_output_dir', lambda path: None)


def test_run_experiment_command_writes_reports(tmp_path):
    command = RunExperimentCommand('monomial-projection', overrides={'degree_cap': 1}, out_root=str(tmp_path))
    assert command.execute() == EXIT_OK
    assert os.path.exists(tmp_path / 'monomial-projection' / 'results.csv')
    assert os.path.exists(tmp_path / 'monomial-projection' / 'report.json')


def test_run_experiment_command_records_failure(tmp_path):
    command = RunExperimentCommand('monomial-projection', overrides={'grid_m': 100}, out_root=str(tmp_path))
    assert command.execute() == EXIT_ERROR
    with open(tmp_path / 'monomial-projection' / 'failure.json', encoding='utf-8') as f:
        record = json.load(f)
    assert record['error_type'] == 'ValueError'


def test_unknown_group():
    with pytest.raises(ValueError):
        RunGroupCommand('render')


def test_parser_and_overrides():
    args = build_parser().parse_args(['verify', 'duality', '--seed', '3', '--grid-m', '128', '--out', 'out'])
    assert args.experiment == 'duality'
    overrides = overrides_from(args)
    assert overrides['seed'] == 3
    assert overrides['grid_m'] == 128
    assert overrides['output_dir'] == 'out'
    assert overrides['tol'] is None

    with pytest.raises(SystemExit):
        build_parser().parse_args(['verify', 'no-such-check'])
