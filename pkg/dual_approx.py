# dual_approx.py

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple, Union

import numpy as np
import scipy.linalg as scilin

from config import NUMERIC_SETTINGS
from disc_core import BoundarySamples, TaylorPoly, default_grid_size, lift_values
from extremal import ExtremalSolution, default_degree_cap, solve_hardy_extremal
from projections import fourier_coefficients, szego_coproject, szego_norm, szego_project
from utils import conjugate_exponent

# 로깅 설정
logger = logging.getLogger(__name__)


@dataclass
class DualSolution:
    g: TaylorPoly
    min_norm: float
    gap: float = float('nan')
    kernel_residual: float = float('nan')
    iterations: int = 0
    converged: bool = False
    diagnostics: Dict = field(default_factory=dict)


def conjugate_coefficients(k: BoundarySamples) -> BoundarySamples:
    """
    c_n ↦ conj(c_{-n}) 대합 (경계에서 점별 켤레와 같음).
    켤레 쌍 Re∫F k̄ 의 커널과 쌍대 이론의 쌍 Re∫F κ 의 커널을 서로 바꿉니다.
    """
    return BoundarySamples(np.conj(k.values))


def bandwidth(k: BoundarySamples, rel_tol: float = 1e-13) -> int:
    spectrum = np.abs(k.coefficients())
    if not np.any(spectrum):
        return 0
    freqs = np.abs(np.fft.fftfreq(k.M, 1.0 / k.M)).astype(int)
    return int(np.max(freqs[spectrum > rel_tol * np.max(spectrum)]))


def default_dual_degree(k: BoundarySamples) -> int:
    N = NUMERIC_SETTINGS['dual_degree_factor'] * bandwidth(k) + NUMERIC_SETTINGS['degree_padding']
    return min(N, k.M // 2 - 1)


def _irls_weights(residual: np.ndarray, p_prime: float, floor: float) -> np.ndarray:
    modulus = np.abs(residual)
    if p_prime < 2:
        return np.maximum(modulus, floor) ** (p_prime - 2)
    return np.maximum(modulus ** (p_prime - 2), floor)


def solve_dual_min(k: BoundarySamples, p_prime: float, N: Optional[int] = None,
                   tol: float = 1e-12, max_iterations: Optional[int] = None) -> DualSolution:
    """
    min ‖k - g‖_{p'}, g = Σ_{n=1}^{N} g_n z^n (g(0)=0 은 변수에서 c_0 를 빼서 보장).
    감쇠를 둔 반복 재가중 최소제곱.
    """
    if p_prime <= 1:
        raise ValueError(f"p' > 1 이 필요합니다: p'={p_prime}")
    if N is None:
        N = default_dual_degree(k)
    if N < 1 or N >= k.M // 2:
        raise ValueError(f"차수 상한 N={N} 는 1 이상 M/2={k.M // 2} 미만이어야 합니다")
    if max_iterations is None:
        max_iterations = NUMERIC_SETTINGS['irls_max_iterations']
    floor = NUMERIC_SETTINGS['irls_weight_floor']

    basis = np.exp(1j * np.outer(k.thetas, np.arange(1, N + 1)))
    target = k.values
    coeffs = np.zeros(N, dtype=complex)
    residual = target.copy()
    norm = float(np.mean(np.abs(residual) ** p_prime) ** (1.0 / p_prime))
    damping = 1.0 if p_prime <= 2 else 1.0 / (p_prime - 1)
    converged = norm == 0.0
    iterations = 0
    flat_steps = 0
    history = [norm]

    while not converged and iterations < max_iterations:
        sqrt_w = np.sqrt(_irls_weights(residual, p_prime, floor))
        solution, _, _, _ = scilin.lstsq(sqrt_w[:, None] * basis, sqrt_w * target)
        eta = damping
        while True:
            trial = coeffs + eta * (solution - coeffs)
            trial_residual = target - basis @ trial
            trial_norm = float(np.mean(np.abs(trial_residual) ** p_prime) ** (1.0 / p_prime))
            if trial_norm <= norm * (1 + 1e-14) or eta < 1e-6:
                break
            eta /= 2
        change = float(np.max(np.abs(trial - coeffs))) / max(1.0, float(np.max(np.abs(trial))))
        decrease = (norm - trial_norm) / norm if norm > 0 else 0.0
        coeffs, residual, norm = trial, trial_residual, trial_norm
        iterations += 1
        history.append(norm)
        # 정지는 계수 변화로 판정, 노름 감소가 반올림 수준으로 5회 이어져도 정지
        flat_steps = flat_steps + 1 if abs(decrease) <= 4 * np.finfo(float).eps else 0
        if norm == 0.0 or change < tol or flat_steps >= 5:
            converged = True
        if iterations % 50 == 0:
            logger.debug(f"[IRLS] 반복 {iterations}: 노름={norm:.12g}, 변화={change:.3e}")

    if not converged:
        logger.warning(f"[IRLS] 최대 반복 {max_iterations} 에서 수렴하지 않았습니다 (노름 {norm:.12g})")
    g = TaylorPoly(np.concatenate(([0.0], coeffs)))
    diagnostics = {
        'p_prime': p_prime,
        'degree_cap': N,
        'grid_M': k.M,
        'weight_floor': floor,
        'damping': damping,
        'norm_history': history,
    }
    logger.info(f"[IRLS] 쌍대 최소 노름 {norm:.12g} (p'={p_prime}, 반복 {iterations})")
    return DualSolution(g, norm, iterations=iterations, converged=converged, diagnostics=diagnostics)


def resampled(kappa: BoundarySamples, M: int) -> BoundarySamples:
    """대역 제한 κ 를 더 조밀한 격자로 옮김 (삼각 보간, 격자가 이미 충분하면 그대로)"""
    if M <= kappa.M:
        return kappa
    return fourier_coefficients(kappa).to_samples(M)


def _common_grid(kappa: BoundarySamples, *polys: TaylorPoly) -> BoundarySamples:
    degree = max(f.degree for f in polys)
    return resampled(kappa, default_grid_size(degree))


def holder_proportionality(K: BoundarySamples, F: TaylorPoly, p: float,
                           threshold: float = 1e-8) -> float:
    """|K|^{p'} / |F|^p 의 중앙값 대비 최대 상대 편차"""
    p_prime = conjugate_exponent(p)
    K = _common_grid(K, F)
    a = np.abs(K.values) ** p_prime
    b = np.abs(BoundarySamples.from_poly(F, K.M).values) ** p
    usable = (a > threshold) & (b > threshold)
    if not np.any(usable):
        return 0.0
    ratio = a[usable] / b[usable]
    center = np.median(ratio)
    return float(np.max(np.abs(ratio / center - 1)))


def extremal_kernel_residual(kappa: BoundarySamples, g: TaylorPoly, F: TaylorPoly,
                             lam: float, p: float) -> float:
    """
    ‖(κ - g) - λ·conj(|F|^{p-2}F)‖_{p'} / ‖κ - g‖_{p'}.
    κ 는 쌍대 이론의 커널(켤레 없는 쌍)이라 리프트의 켤레와 비교합니다.
    """
    p_prime = conjugate_exponent(p)
    kappa = _common_grid(kappa, g, F)
    extremal_kernel = kappa - BoundarySamples.from_poly(g, kappa.M)
    lifted = lift_values(BoundarySamples.from_poly(F, kappa.M).values, p)
    defect = BoundarySamples(extremal_kernel.values - lam * np.conj(lifted))
    denominator = extremal_kernel.lp_norm(p_prime)
    if denominator == 0:
        return defect.lp_norm(p_prime)
    return defect.lp_norm(p_prime) / denominator


@dataclass
class DualityReport:
    primal: ExtremalSolution
    dual: DualSolution
    kappa: BoundarySamples
    gap: float
    kernel_residual: float
    holder_deviation: float


def _kernels(kernel: Union[TaylorPoly, BoundarySamples],
             M: Optional[int]) -> Tuple[TaylorPoly, BoundarySamples]:
    if isinstance(kernel, BoundarySamples):
        kappa = kernel
        k = szego_project(conjugate_coefficients(kappa))
    else:
        k = kernel
        kappa = conjugate_coefficients(BoundarySamples.from_poly(k, M or default_grid_size(k.degree)))
    return k, kappa


def duality_degree(k: TaylorPoly, kappa: BoundarySamples) -> int:
    """원문제와 쌍대 문제가 함께 쓰는 차수 상한: max(deg k + 32, 4·대역폭 + 32)"""
    dual = NUMERIC_SETTINGS['dual_degree_factor'] * bandwidth(kappa) + NUMERIC_SETTINGS['degree_padding']
    return max(default_degree_cap(k), dual)


def solve_duality(kernel: Union[TaylorPoly, BoundarySamples], p: float,
                  N: Optional[int] = None, tol: Optional[float] = None,
                  M: Optional[int] = None) -> DualityReport:
    """
    kernel 이 TaylorPoly 면 켤레 쌍의 커널 k, BoundarySamples 면 쌍대 이론의 커널 κ 로 봅니다.
    원문제 max Re(1/2π)∫F k̄ 와 쌍대 문제 min ‖κ - g‖_{p'} 를 각각 풀어 비교합니다.
    두 문제는 같은 차수 상한 N 과 같은 경계 격자를 쓰고, 검사도 그 격자에서 합니다.
    """
    p_prime = conjugate_exponent(p)
    if tol is None:
        tol = NUMERIC_SETTINGS['duality_tol']
    k, kappa = _kernels(kernel, M)
    if N is None:
        N = duality_degree(k, kappa)
    kappa = resampled(kappa, 2 * default_grid_size(N))
    logger.debug(f"쌍대성 격자: N={N}, M={kappa.M}")
    primal = solve_hardy_extremal(k, p, N, tol, M=kappa.M)
    dual = solve_dual_min(kappa, p_prime, N)
    gap = abs(primal.lam - dual.min_norm) / primal.lam
    kernel_residual = extremal_kernel_residual(kappa, dual.g, primal.F, primal.lam, p)
    holder_deviation = holder_proportionality(kappa - BoundarySamples.from_poly(dual.g, kappa.M),
                                              primal.F, p)
    dual.gap = gap
    dual.kernel_residual = kernel_residual
    if not primal.converged:
        logger.warning(f"쌍대성 p={p}: 원문제가 수렴하지 않았습니다 (잔차 {primal.residual:.3e})")
    logger.info(f"쌍대성 p={p}: 원문제 {primal.lam:.12g}, 쌍대 {dual.min_norm:.12g}, 간극 {gap:.3e}")
    return DualityReport(primal, dual, kappa, gap, kernel_residual, holder_deviation)


def duality_gap(kernel: Union[TaylorPoly, BoundarySamples], p: float, **kwargs) -> float:
    """|원문제 - 쌍대| / 원문제"""
    return solve_duality(kernel, p, **kwargs).gap


def best_analytic_approx(k: BoundarySamples, p: float,
                         N: Optional[int] = None) -> Tuple[TaylorPoly, float]:
    """
    ‖f - k‖_p 를 최소화하는 해석 f.
    h = g/z 로 두고 ‖g - z·P_S^⊥ k‖ 를 H_0 위에서 최소화한 뒤 f = h + P_S(k).
    """
    if p <= 1:
        raise ValueError(f"p > 1 이 필요합니다: p={p}")
    analytic = szego_project(k)
    anti_analytic = szego_coproject(k).times_z()
    dual = solve_dual_min(anti_analytic, p, N)
    if not dual.converged:
        logger.warning("최선 근사: 쌍대 문제가 수렴하지 않았습니다")
    f = dual.g.divide_by_z() + analytic
    distance = (BoundarySamples.from_poly(f, k.M) - k).lp_norm(p)
    logger.info(f"최선 해석 근사 p={p}: 거리 {distance:.12g}")
    return f, distance


@dataclass
class CrossNormReport:
    f_norm_q: float
    bound: Optional[float]
    ok: Optional[bool]
    applicable: bool
    bound_lemma: Optional[float] = None
    # ‖f - k‖_q ≤ ‖P_S^⊥ k‖_q / (1 - C̃)
    distance_q: Optional[float] = None
    distance_bound: Optional[float] = None
    distance_ok: Optional[bool] = None


def cross_norm_report(f: TaylorPoly, k: BoundarySamples, q: float, ctilde: float,
                      tolerance: float = 1e-9) -> CrossNormReport:
    """
    ‖f‖_{H^q} ≤ (2 + 1/(1-C̃))·𝔰_q·‖k‖_{L^q}.
    함께 보고하는 거리 부등식 ‖f - k‖_q ≤ ‖P_S^⊥ k‖_q / (1-C̃) 는 g = z(f - P_S k) 가
    반해석 함수 z·P_S^⊥ k 의 최선 근사라는 데서 나옵니다.
    """
    M = max(k.M, default_grid_size(f.degree))
    k = resampled(k, M)
    f_samples = BoundarySamples.from_poly(f, M)
    f_norm = f_samples.lp_norm(q)
    distance = (f_samples - k).lp_norm(q)
    if ctilde >= 1:
        logger.info(f"교차 노름 검사 적용 불가: C̃={ctilde} ≥ 1")
        return CrossNormReport(f_norm, None, None, False, distance_q=distance)
    scale = szego_norm(q) * k.lp_norm(q)
    bound = (2 + 1 / (1 - ctilde)) * scale
    bound_lemma = (1 + 1 / (1 - ctilde)) * scale
    ok = f_norm <= bound * (1 + tolerance)
    distance_bound = szego_coproject(k).lp_norm(q) / (1 - ctilde)
    distance_ok = distance <= distance_bound * (1 + tolerance) + tolerance
    return CrossNormReport(f_norm, bound, ok, True, bound_lemma, distance, distance_bound, distance_ok)
