# squarefn.py

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from config import NUMERIC_SETTINGS
from disc_core import (
    PolarGrid,
    TaylorPoly,
    boundary_thetas,
    default_grid_size,
    evaluate,
    lift_values,
    make_polar_grid,
)

# 로깅 설정
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConeSpec:
    """
    Γ_θ = {(r,φ): |θ-φ| < aperture·(1-r), r_min < r < 1}.
    기본값 aperture=1/2 가 표준 콘입니다.
    """
    aperture: float = 0.5
    r_min: float = 0.0

    def half_width(self, r):
        return self.aperture * (1 - np.asarray(r, dtype=float))

    def area(self) -> float:
        """(r,φ) 좌표에서의 넓이"""
        return self.aperture * (1 - self.r_min) ** 2


DEFAULT_CONE = ConeSpec()


@dataclass(frozen=True, eq=False)
class GradField:
    """PolarGrid 위의 |∇G|² 또는 |∂_z f|² 값. 관례: |∇|F|| = |F'|."""
    values: np.ndarray
    grid: PolarGrid

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != self.grid.points.shape:
            raise ValueError(f"필드 모양 {values.shape} 이 격자 {self.grid.points.shape} 와 다릅니다")
        if np.any(values < 0):
            raise ValueError("기울기 필드는 음수가 될 수 없습니다")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)


def grad_modulus_power(F: TaylorPoly, s: float, grid: Optional[PolarGrid] = None) -> GradField:
    """|∇(|F|^s)|² = (s·|F|^{s-1}|F'|)²"""
    if s <= 0:
        raise ValueError(f"지수 s 는 양수여야 합니다: s={s}")
    if grid is None:
        grid = make_polar_grid()
    modulus = np.abs(grid.evaluate(F))
    derivative = np.abs(grid.evaluate(F.derivative()))
    zero = modulus == 0
    if s < 1 and np.any(zero):
        raise ValueError(f"s={s} < 1 이면 F 의 영점이 격자 노드에 있으면 안 됩니다")
    field = np.zeros_like(modulus)
    nonzero = ~zero
    field[nonzero] = (s * modulus[nonzero] ** (s - 1) * derivative[nonzero]) ** 2
    return GradField(field, grid)


def dz_field(dz_values, grid: PolarGrid) -> GradField:
    """∂_z f 값으로부터 |∂_z f|² 필드"""
    return GradField(np.abs(np.asarray(dz_values)) ** 2, grid)


@lru_cache(maxsize=16)
def _midpoint_kernel(grid: PolarGrid, cone: ConeSpec, n_mid: int) -> np.ndarray:
    """링 i, 주파수 n 에 대해 Σ_k e^{in η_ik}·(폭/K)·w_i"""
    freqs = np.fft.fftfreq(grid.n_theta, 1.0 / grid.n_theta)
    widths = 2 * cone.half_width(grid.r_nodes)
    ring_weights = np.where(grid.r_nodes > cone.r_min, grid.r_weights, 0.0)
    # 폭 (1-r) 안의 중점 노드
    fractions = (np.arange(n_mid) + 0.5) / n_mid - 0.5
    offsets = widths[:, None] * fractions[None, :]
    kernel = np.exp(1j * offsets[:, :, None] * freqs[None, None, :]).sum(axis=1)
    kernel *= (ring_weights * widths / n_mid)[:, None]
    kernel.setflags(write=False)
    return kernel


def _cone_spectrum(field: GradField, cone: ConeSpec, n_mid: int) -> Tuple[np.ndarray, np.ndarray]:
    grid = field.grid
    T = grid.n_theta
    freqs = np.fft.fftfreq(T, 1.0 / T)
    # 링별 삼각보간 계수
    ring_spectra = np.fft.fft(field.values, axis=1) / T
    combined = np.sum(ring_spectra * _midpoint_kernel(grid, cone, n_mid), axis=0)
    return combined, freqs


def square_function_profile(field: GradField, thetas: Optional[Sequence[float]] = None,
                            cone: ConeSpec = DEFAULT_CONE,
                            n_mid: Optional[int] = None) -> np.ndarray:
    """여러 경계 각도에서 S 를 한 번에 계산 (기본: 격자의 모든 각도)"""
    if n_mid is None:
        n_mid = NUMERIC_SETTINGS['cone_midpoints']
    if thetas is None:
        thetas = field.grid.thetas
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    combined, freqs = _cone_spectrum(field, cone, n_mid)
    squares = np.real(np.exp(1j * np.outer(thetas, freqs)) @ combined)
    return np.sqrt(np.maximum(squares, 0.0))


def square_function(field: GradField, theta: float, cone: ConeSpec = DEFAULT_CONE) -> float:
    """S(G)(e^{iθ}) = (∬_{Γ_θ} |∇G|² dr dφ)^{1/2}"""
    return float(square_function_profile(field, [theta], cone)[0])


def square_function_Sz(dz_values, theta: float, grid: Optional[PolarGrid] = None,
                       cone: ConeSpec = DEFAULT_CONE) -> float:
    """S_z(f)(e^{iθ}), dz_values 는 grid 노드 위의 ∂_z f"""
    if grid is None:
        grid = make_polar_grid()
    return square_function(dz_field(dz_values, grid), theta, cone)


def boundary_lp_mean(values, p: float) -> float:
    """균등 각도 표본의 L^p(∂𝔻) 노름"""
    if p <= 0:
        raise ValueError(f"지수는 양수여야 합니다: p={p}")
    return float(np.mean(np.abs(np.asarray(values)) ** p) ** (1.0 / p))


def _cone_sample_points(theta, grid: PolarGrid, cone: ConeSpec,
                        n_r: int, n_phi: int) -> np.ndarray:
    radii = np.union1d(np.linspace(cone.r_min, 1.0, n_r), grid.r_nodes)
    radii = radii[radii >= cone.r_min]
    fractions = np.linspace(-1.0, 1.0, n_phi)
    theta = np.asarray(theta, dtype=float)
    angles = theta[..., None, None] + cone.half_width(radii)[:, None] * fractions[None, :]
    return radii[:, None] * np.exp(1j * angles)


def nontangential_max(h: TaylorPoly, theta: float, grid: Optional[PolarGrid] = None,
                      cone: ConeSpec = DEFAULT_CONE, n_r: Optional[int] = None,
                      n_phi: Optional[int] = None) -> float:
    """h*(e^{iθ}) = sup_{Γ_θ} |h|, 경계 극한 노드 (r=1, φ=θ) 포함"""
    return float(nontangential_max_profile(h, [theta], grid, cone, n_r, n_phi)[0])


def nontangential_max_profile(h: TaylorPoly, thetas=None, grid: Optional[PolarGrid] = None,
                              cone: ConeSpec = DEFAULT_CONE, n_r: Optional[int] = None,
                              n_phi: Optional[int] = None) -> np.ndarray:
    if grid is None:
        grid = make_polar_grid()
    if n_r is None:
        n_r = NUMERIC_SETTINGS['ntmax_radial']
    if n_phi is None:
        n_phi = NUMERIC_SETTINGS['ntmax_angular']
    if thetas is None:
        thetas = boundary_thetas(default_grid_size(h.degree))
    elif np.isscalar(thetas):
        thetas = boundary_thetas(int(thetas))
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    points = _cone_sample_points(thetas, grid, cone, n_r, n_phi)
    return np.max(np.abs(evaluate(h, points)), axis=(1, 2))


def origin_zero_order(F: TaylorPoly) -> int:
    """원점에서 F 의 영점 차수 (|계수| ≤ zero_tolerance 는 0 으로 봄)"""
    significant = np.flatnonzero(np.abs(F.coeffs) > NUMERIC_SETTINGS['zero_tolerance'])
    return int(significant[0]) if significant.size else 0


def calderon_ratios(F: TaylorPoly, delta: float, p: float, grid: Optional[PolarGrid] = None,
                    M: Optional[int] = None) -> Tuple[float, Optional[float]]:
    """
    G = |F|^δ 에 대해 ‖S(G)‖_p/‖G‖_p 와 (F(0)=0 일 때) ‖G‖_p/‖S(G)‖_p.

    원점에서 m 차 영점이면 |∇G|² ~ r^{2δm-2} 이고 콘 적분 dr dφ 는 δm ≤ 1/2 일 때
    모든 θ 에서 발산합니다. 이 경우 격자 근사 대신 (∞, 0) 을 돌려줍니다.
    """
    if delta <= 0 or p <= 0:
        raise ValueError(f"δ 와 p 는 양수여야 합니다: δ={delta}, p={p}")
    if F.is_zero():
        raise ValueError("F 가 항등적으로 0 입니다")
    order = origin_zero_order(F)
    if order > 0 and delta * order <= 0.5:
        logger.debug(f"칼데론 비율 δ={delta}, p={p}: 원점 {order}차 영점에서 S(G) 발산")
        return float('inf'), 0.0
    if grid is None:
        grid = make_polar_grid()
    if M is None:
        M = max(default_grid_size(F.degree), grid.n_theta)
    boundary = np.abs(evaluate(F, np.exp(1j * boundary_thetas(M)))) ** delta
    g_norm = boundary_lp_mean(boundary, p)
    s_norm = boundary_lp_mean(square_function_profile(grad_modulus_power(F, delta, grid)), p)
    ratio_upper = s_norm / g_norm
    ratio_lower = None
    if order > 0 and s_norm > 0:
        ratio_lower = g_norm / s_norm
    logger.debug(f"칼데론 비율 δ={delta}, p={p}: 상한 {ratio_upper:.6g}, 하한 {ratio_lower}")
    return ratio_upper, ratio_lower


def lift_dz_values(F: TaylorPoly, p: float, grid: PolarGrid) -> np.ndarray:
    """f = |F|^{p-2}F 에 대해 ∂_z f = (p/2)|F|^{p-2} F'"""
    values = grid.evaluate(F)
    derivative = grid.evaluate(F.derivative())
    modulus = np.abs(values)
    out = np.zeros_like(values)
    nonzero = modulus > 0
    out[nonzero] = (p / 2) * modulus[nonzero] ** (p - 2) * derivative[nonzero]
    return out


def lift_sz_identity_check(F: TaylorPoly, p: float, grid: Optional[PolarGrid] = None,
                           step: Optional[float] = None) -> float:
    """
    |∂_z f| = (p/2)|F|^{p-2}|F'| 를 중심 유한차분으로 검사하고 최대 상대오차를 반환합니다.
    """
    if p <= 1:
        raise ValueError(f"p > 1 이 필요합니다: p={p}")
    if grid is None:
        grid = make_polar_grid()
    if step is None:
        step = NUMERIC_SETTINGS['fd_step']
    r_low, r_high = NUMERIC_SETTINGS['fd_annulus']
    ring = (grid.r_nodes >= r_low) & (grid.r_nodes <= r_high)
    z = grid.points[ring, :]
    modulus = np.abs(evaluate(F, z))
    if p < 2 and np.any(modulus == 0):
        raise ValueError(f"p={p} < 2 이면 F 가 노드에서 0 이 아니어야 합니다")

    def lift(w):
        return lift_values(evaluate(F, w), p)

    dfdx = (lift(z + step) - lift(z - step)) / (2 * step)
    dfdy = (lift(z + 1j * step) - lift(z - 1j * step)) / (2 * step)
    dz = (dfdx - 1j * dfdy) / 2
    target = (p / 2) * modulus ** (p - 2) * np.abs(evaluate(F.derivative(), z))
    usable = (modulus > 1e-8) & (target > 1e-12)
    if not np.any(usable):
        return 0.0
    errors = np.abs(np.abs(dz[usable]) - target[usable]) / target[usable]
    return float(np.max(errors))


def _lift_derivative_parts(F: TaylorPoly, p: float, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    f = |F|^{p-2}F 에 대해 (∂_z̄ f, Δf).
    ∂_z̄ f = (p/2 - 1)|F|^p conj(F') / F̄², Δf = p(p-2)|F|^{p-2}|F'|² / F̄.
    """
    values = evaluate(F, points)
    derivative = evaluate(F.derivative(), points)
    modulus = np.abs(values)
    zero = modulus == 0
    if p < 3 and np.any(zero):
        raise ValueError(f"p={p} < 3 이면 F 가 노드에서 0 이 아니어야 합니다")
    dzbar = np.zeros_like(values)
    laplacian = np.zeros_like(values)
    nz = ~zero
    conj_values = np.conj(values[nz])
    dzbar[nz] = (p / 2 - 1) * modulus[nz] ** p * np.conj(derivative[nz]) / conj_values ** 2
    laplacian[nz] = p * (p - 2) * modulus[nz] ** (p - 2) * np.abs(derivative[nz]) ** 2 / conj_values
    return dzbar, laplacian


def lift_product_laplacian(F: TaylorPoly, h: TaylorPoly, p: float, grid: PolarGrid) -> np.ndarray:
    """Δ(f h) = 4(∂_z̄ f)h' + Δ(f)h, h 는 해석"""
    dzbar, laplacian = _lift_derivative_parts(F, p, grid.points)
    return 4 * dzbar * grid.evaluate(h.derivative()) + laplacian * grid.evaluate(h)
