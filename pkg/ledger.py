# ledger.py

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Set, Tuple

import numpy as np

from config import CORPUS_SETTINGS
from disc_core import BoundarySamples, PolarGrid, TaylorPoly, default_grid_size, make_polar_grid
from experiment_config import ExperimentConfig
from projections import szego_norm
from squarefn import calderon_ratios, lift_product_laplacian, nontangential_max_profile
from sweep_runner import run_sweep
from utils import conjugate_exponent, ledger_store, random_coefficient_corpus

# 로깅 설정
logger = logging.getLogger(__name__)


class MissingLedgerEntry(KeyError):
    """원장에 필요한 (지수, δ) 칸이 없음"""


def cell_key(*values: float) -> str:
    return '|'.join(f"{float(v):.12g}" for v in values)


@dataclass
class ConstantsLedger:
    """
    코퍼스에서 얻은 경험적 상수. 모두 참 상수의 하한입니다.
    𝔰_p 만 닫힌 형태 csc(π/p) 로 계산합니다.
    """
    calderon_upper: Dict[str, float] = field(default_factory=dict)
    calderon_lower: Dict[str, float] = field(default_factory=dict)
    nontangential: Dict[str, float] = field(default_factory=dict)
    point_eval: Dict[str, float] = field(default_factory=dict)
    provenance: Dict = field(default_factory=dict)

    @staticmethod
    def _lookup(table: Dict[str, float], name: str, *values: float) -> float:
        key = cell_key(*values)
        if key not in table:
            raise MissingLedgerEntry(f"{name}[{key}] 항목이 원장에 없습니다")
        return table[key]

    def calderon(self, p: float, delta: float) -> float:
        return self._lookup(self.calderon_upper, 'C', p, delta)

    def calderon_hat(self, p: float, delta: float) -> float:
        return self._lookup(self.calderon_lower, 'Ĉ', p, delta)

    def nontangential_constant(self, q: float) -> float:
        return self._lookup(self.nontangential, '𝔪', q)

    def point_evaluation_constant(self, q: float) -> float:
        return self._lookup(self.point_eval, '𝔨', q)

    @staticmethod
    def szego(p: float) -> float:
        return szego_norm(p)

    @staticmethod
    def _record(table: Dict[str, float], key: str, value: float):
        # 상한 추정은 줄어들지 않음
        if np.isfinite(value):
            table[key] = max(table.get(key, 0.0), float(value))

    def record_calderon(self, p: float, delta: float, upper: float, lower: Optional[float] = None):
        self._record(self.calderon_upper, cell_key(p, delta), upper)
        if lower is not None:
            self._record(self.calderon_lower, cell_key(p, delta), lower)

    def record_nontangential(self, q: float, value: float):
        self._record(self.nontangential, cell_key(q), value)

    def record_point_eval(self, q: float, value: float):
        self._record(self.point_eval, cell_key(q), value)

    def to_dict(self) -> dict:
        return {
            'calderon_upper': dict(sorted(self.calderon_upper.items())),
            'calderon_lower': dict(sorted(self.calderon_lower.items())),
            'nontangential': dict(sorted(self.nontangential.items())),
            'point_eval': dict(sorted(self.point_eval.items())),
            'provenance': dict(self.provenance),
            'ledger_conditional': True,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'ConstantsLedger':
        return cls(
            calderon_upper={k: float(v) for k, v in data.get('calderon_upper', {}).items()},
            calderon_lower={k: float(v) for k, v in data.get('calderon_lower', {}).items()},
            nontangential={k: float(v) for k, v in data.get('nontangential', {}).items()},
            point_eval={k: float(v) for k, v in data.get('point_eval', {}).items()},
            provenance=dict(data.get('provenance', {})),
        )


def assemble_ctilde(q: float, p: float, ledger: Optional[ConstantsLedger]) -> float:
    """
    C̃_{q,p} = 𝔰_{q'}·[(p|p-2|/(p-1))𝔨_q + (|p-2|/(4(p-1)))C_{q,p-1}C_{q',1}
                     + 𝔪_{q'}(p|p-2|/(2(p-1)))C²_{2q,(p-1)/2}]
    p=2 이면 모든 항이 |p-2| 를 가지므로 원장 없이 0 입니다.
    """
    if p == 2:
        return 0.0
    if ledger is None:
        raise MissingLedgerEntry(f"C̃[{cell_key(q, p)}] 를 조립할 원장이 없습니다")
    q_prime = conjugate_exponent(q)
    factor = abs(p - 2) / (p - 1)
    point_term = p * factor * ledger.point_evaluation_constant(q)
    calderon_term = factor / 4 * ledger.calderon(q, p - 1) * ledger.calderon(q_prime, 1.0)
    maximal_term = ledger.nontangential_constant(q_prime) * p * factor / 2 \
        * ledger.calderon(2 * q, (p - 1) / 2) ** 2
    return szego_norm(q_prime) * (point_term + calderon_term + maximal_term)


def point_evaluation_term(F: TaylorPoly, h: TaylorPoly, p: float,
                          grid: Optional[PolarGrid] = None) -> complex:
    """A = (1/2)∫_{|z|<1/4} Δ(fh) log(1/|z|) dA/π, f = |F|^{p-2}F"""
    if abs(h.coeffs[0]) > 0:
        raise ValueError(f"h(0)=0 이 필요합니다: h(0)={h.coeffs[0]}")
    if grid is None:
        grid = make_polar_grid(radius=0.25)
    integrand = lift_product_laplacian(F, h, p, grid) * np.log(1.0 / np.abs(grid.points))
    return complex(0.5 * grid.integrate(integrand))


def point_evaluation_ratio(F: TaylorPoly, h: TaylorPoly, p: float, q: float,
                           grid: Optional[PolarGrid] = None, M: Optional[int] = None) -> float:
    """|A| / ((p|p-2|/(p-1))·‖F‖^{p-1}_{(p-1)q}·‖h‖_{q'})"""
    if M is None:
        M = 2 * default_grid_size(max(F.degree, h.degree))
    scale = p * abs(p - 2) / (p - 1)
    F_norm = BoundarySamples.from_poly(F, M).lp_norm((p - 1) * q)
    h_norm = BoundarySamples.from_poly(h, M).lp_norm(conjugate_exponent(q))
    denominator = scale * F_norm ** (p - 1) * h_norm
    if denominator == 0:
        return 0.0
    return abs(point_evaluation_term(F, h, p, grid)) / denominator


def required_cells(p_values, q_values) -> Tuple[Set[Tuple[float, float]], Set[float], Set[Tuple[float, float]]]:
    """C̃_{q,p} 조립에 필요한 칼데론 칸, 𝔪 지수, 𝔨 (q, p) 쌍"""
    calderon: Set[Tuple[float, float]] = set()
    maximal: Set[float] = set()
    point: Set[Tuple[float, float]] = set()
    for q in q_values:
        q_prime = conjugate_exponent(q)
        for p in p_values:
            if p == 2:
                continue
            calderon.update({(q, p - 1), (q_prime, 1.0), (2 * q, (p - 1) / 2)})
            maximal.add(q_prime)
            point.add((q, p))
    return calderon, maximal, point


def ledger_exponents(config: ExperimentConfig) -> List[float]:
    """
    설정의 p 값들과 config.p, 그리고 그 켤레 지수
    (극값 함수 상한은 C̃_{q,p}, 교차 노름 검사는 C̃_{q,p'} 를 씀)
    """
    values = set(float(p) for p in config.p_values)
    if config.p is not None and config.p > 1:
        values.add(float(config.p))
    values.update(conjugate_exponent(p) for p in list(values) if p > 1)
    return sorted(values)


def ledger_q_values(config: ExperimentConfig) -> List[float]:
    values = set(float(q) for q in config.q_values)
    if config.q is not None and config.q > 1:
        values.add(float(config.q))
    return sorted(values)


def build_ledger(config: ExperimentConfig,
                 progress_callback: Optional[Callable[[int], None]] = None) -> ConstantsLedger:
    """
    고정 시드 코퍼스에서 C_{p,δ}, Ĉ_{p,δ}, 𝔪_q, 𝔨_q 를 추정합니다.
    코퍼스는 앞부분이 고정되므로 크기를 늘려도 추정값이 줄지 않습니다.
    """
    size = config.sample_count(CORPUS_SETTINGS['samples_per_cell'])
    grid = config.polar_grid()
    quarter_grid = config.polar_grid(radius=0.25)
    corpus = [TaylorPoly(c) for c in random_coefficient_corpus(config.seed, size, config.max_degree)]
    vanishing = [TaylorPoly(c) for c in random_coefficient_corpus(
        config.seed + 1, size, config.max_degree, vanish_at_origin=True)]

    calderon_cells, maximal_exponents, point_cells = required_cells(
        ledger_exponents(config), ledger_q_values(config))
    sweep_cells = {(p, delta) for p in CORPUS_SETTINGS['calderon_exponents']
                   for delta in CORPUS_SETTINGS['calderon_deltas']}
    cells = sorted(calderon_cells | sweep_cells)
    logger.info(f"상수 원장 계산 시작: 칼데론 {len(cells)}칸, 𝔪 {len(maximal_exponents)}개, "
                f"𝔨 {len(point_cells)}쌍, 코퍼스 {size}개")

    def calderon_cell(cell):
        p, delta = cell
        upper = max((calderon_ratios(F, delta, p, grid)[0] for F in corpus if not F.is_zero()),
                    default=0.0)
        lower = None
        if cell in sweep_cells:
            lowers = [calderon_ratios(F, delta, p, grid)[1] for F in vanishing]
            lower = max((value for value in lowers if value is not None), default=None)
        return upper, lower

    M = default_grid_size(config.max_degree)

    def maximal_cell(q):
        best = 0.0
        for h in vanishing:
            h_norm = BoundarySamples.from_poly(h, M).lp_norm(q)
            if h_norm > 0:
                star = nontangential_max_profile(h, M, grid)
                best = max(best, float(np.mean(star ** q) ** (1.0 / q)) / h_norm)
        return best

    def point_cell(cell):
        q, p = cell
        best = 0.0
        for F, h in zip(corpus, vanishing):
            try:
                best = max(best, point_evaluation_ratio(F, h, p, q, quarter_grid))
            except ValueError as e:
                logger.debug(f"𝔨 추정에서 제외: {e}")
        return best

    tasks = [('calderon', cell) for cell in cells] \
        + [('maximal', q) for q in sorted(maximal_exponents)] \
        + [('point', cell) for cell in sorted(point_cells)]
    handlers = {'calderon': calderon_cell, 'maximal': maximal_cell, 'point': point_cell}
    results = run_sweep(tasks, lambda task: handlers[task[0]](task[1]),
                        progress_callback, label='ledger')

    ledger = ConstantsLedger(provenance={
        'seed': config.seed,
        'samples_per_cell': size,
        'max_degree': config.max_degree,
        'grid': grid.describe(),
        'p_values': ledger_exponents(config),
        'q_values': ledger_q_values(config),
    })
    for (kind, cell), result in zip(tasks, results):
        if kind == 'calderon':
            ledger.record_calderon(cell[0], cell[1], *result)
        elif kind == 'maximal':
            ledger.record_nontangential(cell, result)
        else:
            ledger.record_point_eval(cell[0], result)
    logger.info("상수 원장 계산 완료")
    return ledger


def _provenance_matches(provenance: dict, config: ExperimentConfig) -> bool:
    return (
        provenance.get('seed') == config.seed
        and provenance.get('samples_per_cell') == config.sample_count(CORPUS_SETTINGS['samples_per_cell'])
        and provenance.get('max_degree') == config.max_degree
        and provenance.get('grid') == config.polar_grid().describe()
        and set(provenance.get('p_values', [])) >= set(ledger_exponents(config))
        and set(provenance.get('q_values', [])) >= set(ledger_q_values(config))
    )


def load_or_build_ledger(config: ExperimentConfig, store=None, rebuild: bool = False,
                         progress_callback: Optional[Callable[[int], None]] = None) -> ConstantsLedger:
    """저장된 원장이 같은 코퍼스로 만들어졌으면 재사용, 아니면 새로 계산해 저장"""
    if store is None:
        store = ledger_store
    if not rebuild:
        data = store.load()
        if data and _provenance_matches(data.get('provenance', {}), config):
            logger.info("저장된 상수 원장을 사용합니다")
            return ConstantsLedger.from_dict(data)
    ledger = build_ledger(config, progress_callback)
    store.save(ledger.to_dict())
    return ledger
