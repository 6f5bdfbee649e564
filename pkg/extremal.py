# extremal.py

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import NUMERIC_SETTINGS
from disc_core import (
    BoundarySamples,
    PolarGrid,
    TaylorPoly,
    bergman_norm,
    default_grid_size,
    integral_mean,
    lift_values,
    make_polar_grid,
)
from projections import bergman_project
from utils import conjugate_exponent, random_disc_coefficients

# 로깅 설정
logger = logging.getLogger(__name__)

RYABYKH_RADII = (0.5, 0.9, 0.99, 0.999)


@dataclass
class ExtremalSolution:
    F: TaylorPoly
    lam: float
    residual: float
    iterations: int
    converged: bool
    diagnostics: Dict = field(default_factory=dict)


class ExtremalSpace:
    """차수 ≤ N 다항식 위의 극값 문제 공간 (노름, 쌍, 리프트 사영)"""
    name = ''

    def __init__(self, p: float, N: int):
        if p <= 1:
            raise ValueError(f"극값 문제는 p > 1 이 필요합니다: p={p}")
        self.p = p
        self.p_prime = conjugate_exponent(p)
        self.N = N

    def truncate(self, f: TaylorPoly) -> TaylorPoly:
        return TaylorPoly(f.padded(self.N + 1)[:self.N + 1])

    def normalize(self, f: TaylorPoly) -> TaylorPoly:
        return f.scaled(1.0 / self.norm(f))

    def norm(self, f: TaylorPoly) -> float:
        raise NotImplementedError

    def dual_norm(self, f: TaylorPoly) -> float:
        raise NotImplementedError

    def inner(self, f: TaylorPoly, g: TaylorPoly) -> complex:
        raise NotImplementedError

    def pairing(self, f: TaylorPoly, k: TaylorPoly) -> float:
        """Re ⟨f, k⟩ (켤레 쌍)"""
        return float(np.real(self.inner(f, k)))

    def lift_projection(self, F: TaylorPoly) -> TaylorPoly:
        raise NotImplementedError

    def precondition(self, defect: TaylorPoly, F: TaylorPoly) -> TaylorPoly:
        """P(w·defect), w = |F|^{2-p}. p=2 에서는 defect 그대로."""
        raise NotImplementedError

    def _weights(self, values: np.ndarray) -> np.ndarray:
        modulus = np.abs(values)
        floor = NUMERIC_SETTINGS['precondition_floor'] * max(float(np.max(modulus)), 1e-300)
        weights = np.maximum(modulus, floor) ** (2 - self.p)
        return weights / np.mean(weights)

    def describe(self) -> dict:
        return {'space': self.name, 'p': self.p, 'degree_cap': self.N}


class BergmanSpace(ExtremalSpace):
    name = 'bergman'

    def __init__(self, p: float, N: int, grid: Optional[PolarGrid] = None):
        super().__init__(p, N)
        self.grid = grid if grid is not None else make_polar_grid()
        if N > self.grid.max_projection_degree:
            raise ValueError(f"차수 상한 N={N} 가 격자 한계 {self.grid.max_projection_degree} 를 넘습니다")

    def norm(self, f):
        return bergman_norm(f, self.p, self.grid)

    def dual_norm(self, f):
        return bergman_norm(f, self.p_prime, self.grid)

    def inner(self, f, g):
        length = max(len(f.coeffs), len(g.coeffs))
        weights = 1.0 / (np.arange(length) + 1)
        return np.sum(f.padded(length) * np.conj(g.padded(length)) * weights)

    def lift_projection(self, F):
        return bergman_project(lift_values(self.grid.evaluate(F), self.p), self.N, self.grid)

    def precondition(self, defect, F):
        if self.p == 2:
            return defect
        weights = self._weights(self.grid.evaluate(F))
        return bergman_project(weights * self.grid.evaluate(defect), self.N, self.grid)

    def describe(self):
        info = super().describe()
        info.update(self.grid.describe())
        return info


class HardySpace(ExtremalSpace):
    name = 'hardy'

    def __init__(self, p: float, N: int, M: Optional[int] = None):
        super().__init__(p, N)
        self.M = M if M is not None else 2 * default_grid_size(N)
        if self.M < 2 * N + 2:
            raise ValueError(f"경계 격자 M={self.M} 가 차수 상한 N={N} 에 비해 작습니다")

    def norm(self, f):
        return BoundarySamples.from_poly(f, self.M).lp_norm(self.p)

    def dual_norm(self, f):
        return BoundarySamples.from_poly(f, self.M).lp_norm(self.p_prime)

    def inner(self, f, g):
        length = max(len(f.coeffs), len(g.coeffs))
        return np.sum(f.padded(length) * np.conj(g.padded(length)))

    def lift_projection(self, F):
        lifted = lift_values(BoundarySamples.from_poly(F, self.M).values, self.p)
        return TaylorPoly(np.fft.fft(lifted)[:self.N + 1] / self.M)

    def precondition(self, defect, F):
        if self.p == 2:
            return defect
        weights = self._weights(BoundarySamples.from_poly(F, self.M).values)
        weighted = weights * BoundarySamples.from_poly(defect, self.M).values
        return TaylorPoly(np.fft.fft(weighted)[:self.N + 1] / self.M)

    def describe(self):
        info = super().describe()
        info['grid_M'] = self.M
        return info


def make_space(space: str, p: float, N: int, grid: Optional[PolarGrid] = None,
               M: Optional[int] = None) -> ExtremalSpace:
    if space == 'bergman':
        return BergmanSpace(p, N, grid)
    if space == 'hardy':
        return HardySpace(p, N, M)
    raise ValueError(f"알 수 없는 공간: {space}")


def default_degree_cap(k: TaylorPoly) -> int:
    return k.degree + NUMERIC_SETTINGS['degree_padding']


def _initial_function(space: ExtremalSpace, k: TaylorPoly, initial: Optional[TaylorPoly],
                      seed: Optional[int]) -> TaylorPoly:
    if initial is not None:
        start = space.truncate(initial)
    elif seed is not None:
        rng = np.random.default_rng(seed)
        start = TaylorPoly(random_disc_coefficients(rng, space.N + 1))
    else:
        start = space.truncate(k)
    return space.normalize(start)


def _residual(space: ExtremalSpace, k: TaylorPoly, F: TaylorPoly,
              k_dual_norm: float) -> Tuple[float, TaylorPoly, float]:
    lam = space.pairing(F, k)
    defect = k - space.lift_projection(F).scaled(lam)
    return lam, defect, space.dual_norm(defect) / k_dual_norm


def solve_extremal(space: ExtremalSpace, k: TaylorPoly, tol: float = 1e-6,
                   max_iterations: Optional[int] = None, initial: Optional[TaylorPoly] = None,
                   seed: Optional[int] = None) -> ExtremalSolution:
    """
    단위구 위의 사영 경사 상승. 방향은 잔차 k - λ·P(|F|^{p-2}F) 에 |F|^{2-p} 가중을
    주어 다시 사영한 것이고, 매 단계 정확히 재정규화합니다.
    단계는 Armijo 조건과 잔차 비증가를 함께 만족할 때만 받아들입니다.
    """
    if k.is_zero():
        raise ValueError("커널 k 가 0 입니다")
    if k.degree > space.N:
        raise ValueError(f"커널 차수 {k.degree} 가 차수 상한 {space.N} 보다 큽니다")
    if max_iterations is None:
        max_iterations = NUMERIC_SETTINGS['ascent_max_iterations']
    armijo_c = NUMERIC_SETTINGS['armijo_c']
    min_step = NUMERIC_SETTINGS['armijo_min_step']

    k = space.truncate(k)
    k_dual_norm = space.dual_norm(k)
    F = _initial_function(space, k, initial, seed)
    lam, defect, residual = _residual(space, k, F, k_dual_norm)
    history = [residual]
    step = 1.0
    iterations = 0
    stalled = False

    while residual >= tol and iterations < max_iterations:
        direction = space.precondition(defect, F).scaled(1.0 / k_dual_norm)
        slope = float(np.real(space.inner(defect, direction)))
        accepted = False
        while step >= min_step:
            trial = space.normalize(F + direction.scaled(step))
            trial_lam, trial_defect, trial_residual = _residual(space, k, trial, k_dual_norm)
            armijo = trial_lam >= lam + armijo_c * step * slope and trial_residual <= residual
            # 반올림 수준에서는 잔차 감소만으로 받아들임
            flat = trial_lam >= lam - 4 * np.finfo(float).eps * abs(lam) and trial_residual < residual
            if armijo or flat:
                accepted = True
                break
            step /= 2
        if not accepted:
            stalled = True
            logger.warning(f"[{space.name}] 역추적 실패: 반복 {iterations}, 잔차 {residual:.3e}")
            break
        F, lam, defect, residual = trial, trial_lam, trial_defect, trial_residual
        history.append(residual)
        iterations += 1
        step = min(step * 2, 1e8)
        if iterations % 100 == 0:
            logger.debug(f"[{space.name}] 반복 {iterations}: λ={lam:.12g}, 잔차={residual:.3e}")

    converged = residual < tol
    monotone = bool(np.all(np.diff(history) <= 0))
    diagnostics = dict(space.describe())
    diagnostics.update({
        'residual_history': history,
        'monotone_residual': monotone,
        'stalled': stalled,
        'final_step': step,
        'tol': tol,
    })
    log = logger.info if converged else logger.warning
    log(f"[{space.name}] 극값 문제 종료: p={space.p}, λ={lam:.12g}, 잔차={residual:.3e}, "
        f"반복={iterations}, 수렴={converged}")
    return ExtremalSolution(F, lam, residual, iterations, converged, diagnostics)


def solve_bergman_extremal(k: TaylorPoly, p: float, N: Optional[int] = None, tol: float = 1e-6,
                           grid: Optional[PolarGrid] = None, **kwargs) -> ExtremalSolution:
    """max Re (1/π)∫_𝔻 F k̄ dA, ‖F‖_{A^p} = 1"""
    if N is None:
        N = default_degree_cap(k)
    return solve_extremal(BergmanSpace(p, N, grid), k, tol, **kwargs)


def solve_hardy_extremal(k: TaylorPoly, p: float, N: Optional[int] = None, tol: float = 1e-6,
                         M: Optional[int] = None, **kwargs) -> ExtremalSolution:
    """max Re (1/2π)∫ F k̄ dθ, ‖F‖_{H^p} = 1"""
    if N is None:
        N = default_degree_cap(k)
    return solve_extremal(HardySpace(p, N, M), k, tol, **kwargs)


def _residual_degree(F: TaylorPoly, k: TaylorPoly, N: Optional[int]) -> int:
    if N is not None:
        return N
    return max(len(F.coeffs) - 1, k.degree)


def optimality_residual_bergman(F: TaylorPoly, k: TaylorPoly, lam: float, p: float,
                                grid: Optional[PolarGrid] = None, N: Optional[int] = None) -> float:
    """‖k - λ·P(|F|^{p-2}F)‖_{A^{p'}} / ‖k‖_{A^{p'}}"""
    space = BergmanSpace(p, _residual_degree(F, k, N), grid)
    defect = k - space.lift_projection(F).scaled(lam)
    return space.dual_norm(defect) / space.dual_norm(k)


def optimality_residual_hardy(F: TaylorPoly, k: TaylorPoly, lam: float, p: float,
                              M: Optional[int] = None, N: Optional[int] = None) -> float:
    """‖k - λ·P_S(|F|^{p-2}F)‖_{H^{p'}} / ‖k‖_{H^{p'}}"""
    space = HardySpace(p, _residual_degree(F, k, N), M)
    defect = k - space.lift_projection(F).scaled(lam)
    return space.dual_norm(defect) / space.dual_norm(k)


def holder_bound(k: TaylorPoly, p: float, space: str = 'hardy',
                 grid: Optional[PolarGrid] = None, M: Optional[int] = None) -> float:
    """λ ≤ ‖k‖_{p'}"""
    p_prime = conjugate_exponent(p)
    if space == 'bergman':
        return bergman_norm(k, p_prime, grid)
    return BoundarySamples.from_poly(k, M or 2 * default_grid_size(k.degree)).lp_norm(p_prime)


@dataclass
class RyabykhProfile:
    solution: ExtremalSolution
    exponent: float
    radii: List[float]
    extremal_means: List[float]
    kernel_means: List[float]

    def rows(self) -> List[Tuple[float, float, float]]:
        return list(zip(self.radii, self.extremal_means, self.kernel_means))


def ryabykh_profile(k: TaylorPoly, p: float, q: float, space: str = 'bergman',
                    radii: Sequence[float] = RYABYKH_RADII, N: Optional[int] = None,
                    tol: float = 1e-6, grid: Optional[PolarGrid] = None) -> RyabykhProfile:
    """
    극값 함수 F 의 지수 (p-1)q 적분평균과 커널의 지수 q 적분평균을 반지름별로 표로 만듭니다.
    """
    if N is None:
        N = default_degree_cap(k)
    solution = solve_extremal(make_space(space, p, N, grid), k, tol)
    if not solution.converged:
        logger.warning(f"라비흐 프로파일: 극값 문제가 수렴하지 않았습니다 (잔차 {solution.residual:.3e})")
    exponent = (p - 1) * q
    M = 2 * default_grid_size(N)
    extremal_means = [integral_mean(solution.F, r, exponent, M) for r in radii]
    kernel_means = [integral_mean(k, r, q, M) for r in radii]
    return RyabykhProfile(solution, exponent, list(radii), extremal_means, kernel_means)
