# tests/conftest.py

import numpy as np
import pytest

from disc_core import make_polar_grid
from experiment_config import ExperimentConfig
from ledger import ConstantsLedger, required_cells


@pytest.fixture
def grid():
    return make_polar_grid()


@pytest.fixture
def small_grid():
    return make_polar_grid(32, 128)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def toy_ledger():
    """C̃ 조립에 필요한 칸을 모두 작은 값으로 채운 원장"""
    p_values = (1.9, 1.95, 2.05, 2.1, 4 / 3, 4.0)
    q_values = (4 / 3, 2.0, 4.0)
    calderon, maximal, point = required_cells(p_values, q_values)
    ledger = ConstantsLedger(provenance={'source': 'fixture'})
    for p, delta in calderon:
        ledger.record_calderon(p, delta, 0.5)
    for q in maximal:
        ledger.record_nontangential(q, 1.5)
    for q, _ in point:
        ledger.record_point_eval(q, 0.1)
    return ledger


@pytest.fixture
def make_config(tmp_path):
    def factory(experiment, **kwargs):
        kwargs.setdefault('output_dir', str(tmp_path / 'results'))
        return ExperimentConfig(experiment=experiment, **kwargs)
    return factory
