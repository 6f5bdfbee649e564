# projections.py

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import numpy as np

from disc_core import (
    BoundarySamples,
    PolarGrid,
    TaylorPoly,
    ZZbarPoly,
    make_polar_grid,
)

# 로깅 설정
logger = logging.getLogger(__name__)

# 세게 사영 결과에서 반올림 잡음으로 간주할 상대 크기
SPECTRAL_NOISE = 32 * np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class FourierCoefficients:
    """c_n, -N ≤ n ≤ N. coeffs[n + N] 에 저장."""
    coeffs: np.ndarray
    N: int

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.N:
            return 0j
        return complex(self.coeffs[n + self.N])

    def to_samples(self, M: Optional[int] = None) -> BoundarySamples:
        if M is None:
            M = 2 * self.N + 2
        if self.N >= M // 2:
            raise ValueError(f"계수 범위 N={self.N} 가 격자 M={M} 를 넘습니다")
        spectrum = np.zeros(M, dtype=complex)
        n = np.arange(-self.N, self.N + 1)
        spectrum[n % M] = self.coeffs
        return BoundarySamples(np.fft.ifft(spectrum) * M)


def fourier_coefficients(samples: BoundarySamples) -> FourierCoefficients:
    """DFT 계수. 나이퀴스트 주파수 -M/2 는 버립니다."""
    M = samples.M
    N = M // 2 - 1
    spectrum = samples.coefficients()
    n = np.arange(-N, N + 1)
    return FourierCoefficients(spectrum[n % M], N)


def bergman_project_monomial(a: int, b: int) -> TaylorPoly:
    """z^a z̄^b 의 베르그만 사영 (닫힌 형태)"""
    if a < 0 or b < 0:
        raise ValueError(f"지수는 음이 아닌 정수여야 합니다: a={a}, b={b}")
    if a < b:
        return TaylorPoly([0.0])
    n = a - b
    return TaylorPoly.monomial(n, (n + 1) / (a + 1))


@lru_cache(maxsize=16)
def moment_matrix(grid: PolarGrid, N: int) -> np.ndarray:
    """행 n 은 노드별 (n+1)·w·conj(z^n)"""
    n = np.arange(N + 1)
    conj_powers = np.conj(grid.points).ravel()[None, :] ** n[:, None]
    matrix = (n + 1)[:, None] * conj_powers * grid.weights.ravel()[None, :]
    matrix.setflags(write=False)
    return matrix


def _moment_projection(values: np.ndarray, N: int, grid: PolarGrid) -> TaylorPoly:
    # 커널 (1 - z w̄)^{-2} = Σ (n+1) z^n w̄^n 의 모멘트별 적분
    return TaylorPoly(moment_matrix(grid, N) @ np.asarray(values, dtype=complex).ravel())


def bergman_project_quadrature_monomial(a: int, b: int, grid: Optional[PolarGrid] = None,
                                        N: Optional[int] = None) -> TaylorPoly:
    """z^a z̄^b 의 베르그만 사영을 커널 적분의 구적으로 계산"""
    if grid is None:
        grid = make_polar_grid()
    if N is None:
        N = a + 1
    values = grid.points ** a * np.conj(grid.points) ** b
    return _moment_projection(values, N, grid)


def bergman_project(f: Union[ZZbarPoly, TaylorPoly, np.ndarray], N: int,
                    grid: Optional[PolarGrid] = None) -> TaylorPoly:
    """
    계수 n 은 (n+1)·⟨f, z^n⟩_{dA/π}, n = 0..N.
    f 는 z,z̄-다항식, 해석 다항식, 또는 grid 노드 위의 값 배열.
    """
    if grid is None:
        grid = make_polar_grid()
    if N < 0 or N > grid.max_projection_degree:
        raise ValueError(
            f"출력 차수 N={N} 가 격자 해상도 한계 {grid.max_projection_degree} 를 넘습니다"
        )
    if isinstance(f, ZZbarPoly):
        values = f.evaluate(grid.points)
    elif isinstance(f, TaylorPoly):
        values = grid.evaluate(f)
    else:
        values = np.asarray(f, dtype=complex)
        if values.shape != grid.points.shape:
            raise ValueError(f"값 배열 모양 {values.shape} 이 격자 {grid.points.shape} 와 다릅니다")
    return _moment_projection(values, N, grid)


def bergman_project_exact(f: ZZbarPoly) -> TaylorPoly:
    """단항식 규칙을 선형으로 합친 베르그만 사영"""
    result = TaylorPoly([0.0])
    for a, b, c in f.terms():
        result = result + bergman_project_monomial(a, b).scaled(c)
    return result


def truncated_projection(f: BoundarySamples, n: int) -> TaylorPoly:
    """주파수 0..n 으로 자른 해석 다항식"""
    if n < 0 or n >= f.M // 2:
        raise ValueError(f"절단 차수 n={n} 은 M/2={f.M // 2} 보다 작아야 합니다")
    return TaylorPoly(f.coefficients()[:n + 1])


def _analytic_mask(M: int) -> np.ndarray:
    mask = np.zeros(M, dtype=bool)
    mask[:M // 2] = True
    return mask


def szego_project(f: BoundarySamples) -> TaylorPoly:
    """음의 주파수를 모두 버림 (주파수 0 은 해석 쪽)"""
    spectrum = f.coefficients()
    scale = float(np.max(np.abs(spectrum))) if spectrum.size else 0.0
    return TaylorPoly(spectrum[:f.M // 2]).trimmed(SPECTRAL_NOISE * scale)


def szego_samples(f: BoundarySamples) -> BoundarySamples:
    """P_S f 의 경계값 (같은 격자)"""
    spectrum = np.fft.fft(f.values)
    return BoundarySamples(np.fft.ifft(np.where(_analytic_mask(f.M), spectrum, 0)))


def szego_coproject(f: BoundarySamples) -> BoundarySamples:
    """P_S^⊥ f = f - P_S f, 음의 주파수만 남음"""
    spectrum = np.fft.fft(f.values)
    return BoundarySamples(np.fft.ifft(np.where(_analytic_mask(f.M), 0, spectrum)))


def szego_norm(p: float) -> float:
    """𝔰_p = csc(π/p)"""
    if p <= 1:
        raise ValueError(f"세게 사영의 노름은 p > 1 에서만 유한합니다: p={p}")
    if p == 2:
        return 1.0
    return float(1.0 / np.sin(np.pi / p))


def szego_norm_check(corpus: List[BoundarySamples], p: float) -> Tuple[float, float, bool]:
    bound = szego_norm(p)
    max_ratio = 0.0
    for idx, f in enumerate(corpus):
        denominator = f.lp_norm(p)
        if denominator == 0:
            logger.debug(f"영함수 건너뜀: index={idx}")
            continue
        ratio = szego_samples(f).lp_norm(p) / denominator
        max_ratio = max(max_ratio, ratio)
    ok = max_ratio <= bound + 1e-8
    logger.info(f"세게 노름 검사 p={p}: 최대 비율 {max_ratio:.6g}, 상한 {bound:.6g}, 통과={ok}")
    return max_ratio, bound, ok
