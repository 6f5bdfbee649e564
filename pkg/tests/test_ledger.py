# tests/test_ledger.py

import numpy as np
import pytest

from disc_core import TaylorPoly
from ledger import (
    ConstantsLedger,
    MissingLedgerEntry,
    assemble_ctilde,
    build_ledger,
    cell_key,
    ledger_exponents,
    ledger_q_values,
    load_or_build_ledger,
    point_evaluation_ratio,
    point_evaluation_term,
)


class MemoryStore:
    def __init__(self, data=None):
        self.data = data
        self.saved = 0

    def load(self):
        return self.data

    def save(self, data):
        self.data = data
        self.saved += 1
        return 'memory'


@pytest.mark.parametrize('q', [4 / 3, 2.0, 4.0])
def test_ctilde_vanishes_at_p2_without_ledger(q):
    assert assemble_ctilde(q, 2.0, None) == 0.0


def test_ctilde_requires_ledger_away_from_p2():
    with pytest.raises(MissingLedgerEntry):
        assemble_ctilde(2.0, 2.1, None)
    with pytest.raises(KeyError):
        assemble_ctilde(2.0, 2.1, ConstantsLedger())


def test_ctilde_formula(toy_ledger):
    p, q = 4.0, 2.0
    factor = abs(p - 2) / (p - 1)
    expected = 1.0 * (p * factor * 0.1 + factor / 4 * 0.5 * 0.5 + 1.5 * p * factor / 2 * 0.5 ** 2)
    assert assemble_ctilde(q, p, toy_ledger) == pytest.approx(expected)


def test_ctilde_uses_conjugate_szego_norm(toy_ledger):
    # q=4 이면 q'=4/3, 𝔰_{4/3} = √2
    p, q = 2.1, 4.0
    factor = abs(p - 2) / (p - 1)
    bracket = p * factor * 0.1 + factor / 4 * 0.25 + 1.5 * p * factor / 2 * 0.25
    assert assemble_ctilde(q, p, toy_ledger) == pytest.approx(np.sqrt(2) * bracket)


def test_ctilde_shrinks_near_p2(toy_ledger):
    values = [assemble_ctilde(2.0, p, toy_ledger) for p in (1.9, 1.95, 2.05, 2.1)]
    assert all(v > 0 for v in values)
    assert values[1] < values[0]
    assert values[2] < values[3]


def test_ledger_records_are_monotone():
    ledger = ConstantsLedger()
    ledger.record_calderon(2.0, 1.0, 0.7, 1.2)
    ledger.record_calderon(2.0, 1.0, 0.5, 1.5)
    assert ledger.calderon(2.0, 1.0) == 0.7
    assert ledger.calderon_hat(2.0, 1.0) == 1.5
    with pytest.raises(MissingLedgerEntry):
        ledger.nontangential_constant(3.0)
    assert ledger.szego(2.0) == 1.0


def test_ledger_dict_round_trip(toy_ledger):
    restored = ConstantsLedger.from_dict(toy_ledger.to_dict())
    assert restored.to_dict() == toy_ledger.to_dict()
    assert restored.calderon(2.0, 3.0) == 0.5
    assert restored.to_dict()['ledger_conditional'] is True
    assert cell_key(2.0, 3.0) in restored.calderon_upper


def test_point_evaluation_term_vanishes_at_p2():
    F = TaylorPoly([1.0, 0.3])
    h = TaylorPoly([0.0, 1.0, 0.5])
    assert abs(point_evaluation_term(F, h, 2.0)) < 1e-15


def test_point_evaluation_term_rejects_nonzero_origin_value():
    with pytest.raises(ValueError):
        point_evaluation_term(TaylorPoly([1.0]), TaylorPoly([1.0, 1.0]), 4.0)


def test_point_evaluation_ratio_is_finite():
    ratio = point_evaluation_ratio(TaylorPoly([1.0, 0.3]), TaylorPoly([0.0, 1.0]), 4.0, 2.0)
    assert np.isfinite(ratio)
    assert ratio >= 0


def _small_config(make_config, samples):
    return make_config('ledger-build', samples=samples, max_degree=3, grid_r=16, grid_theta=64,
                       p_values=[4.0], q_values=[2.0])


def test_build_ledger_populates_required_cells(make_config):
    ledger = build_ledger(_small_config(make_config, 3))
    value = assemble_ctilde(2.0, 4.0, ledger)
    assert np.isfinite(value) and value > 0
    assert ledger.provenance['samples_per_cell'] == 3
    assert all(v >= 0 for v in ledger.calderon_upper.values())


def test_enlarging_corpus_never_decreases_estimates(make_config):
    small = build_ledger(_small_config(make_config, 2))
    large = build_ledger(_small_config(make_config, 4))
    for table in ('calderon_upper', 'nontangential', 'point_eval'):
        for key, value in getattr(small, table).items():
            assert getattr(large, table)[key] >= value


def test_load_or_build_reuses_matching_ledger(make_config):
    config = _small_config(make_config, 2)
    store = MemoryStore()
    first = load_or_build_ledger(config, store)
    assert store.saved == 1
    second = load_or_build_ledger(config, store)
    assert store.saved == 1
    assert second.to_dict() == first.to_dict()


def test_ledger_covers_configured_exponent_and_its_conjugate(make_config):
    config = make_config('ledger-build', samples=2, max_degree=3, grid_r=16, grid_theta=64,
                         p_values=[4.0], q_values=[2.0], p=3.0, q=3.0)
    assert ledger_exponents(config) == pytest.approx([4 / 3, 1.5, 3.0, 4.0])
    assert ledger_q_values(config) == [2.0, 3.0]
    ledger = build_ledger(config)
    for q in (2.0, 3.0):
        for p in (3.0, 1.5):
            assert np.isfinite(assemble_ctilde(q, p, ledger))


def test_ledger_without_configured_exponent_is_rebuilt(make_config):
    store = MemoryStore()
    load_or_build_ledger(_small_config(make_config, 2), store)
    with_p = make_config('ledger-build', samples=2, max_degree=3, grid_r=16, grid_theta=64,
                         p_values=[4.0], q_values=[2.0], p=3.0)
    ledger = load_or_build_ledger(with_p, store)
    assert store.saved == 2
    assert np.isfinite(assemble_ctilde(2.0, 3.0, ledger))
