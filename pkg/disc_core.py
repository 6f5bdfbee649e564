# disc_core.py

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from config import NUMERIC_SETTINGS

# 로깅 설정
logger = logging.getLogger(__name__)


def default_grid_size(degree: int) -> int:
    """4·차수 + 16 이상인 가장 작은 2의 거듭제곱"""
    minimum = NUMERIC_SETTINGS['boundary_oversampling'] * max(int(degree), 0) \
        + NUMERIC_SETTINGS['boundary_padding']
    return 1 << (minimum - 1).bit_length()


def _frozen_array(values, dtype=complex, ndim: int = 1) -> np.ndarray:
    array = np.array(values, dtype=dtype, ndmin=ndim)
    if array.size == 0:
        array = np.zeros((1,) * ndim, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TaylorPoly:
    """해석 다항식. coeffs[n] 은 z^n 의 계수."""
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', _frozen_array(self.coeffs))

    @classmethod
    def monomial(cls, n: int, c: complex = 1.0) -> 'TaylorPoly':
        coeffs = np.zeros(n + 1, dtype=complex)
        coeffs[n] = c
        return cls(coeffs)

    @property
    def degree(self) -> int:
        nonzero = np.flatnonzero(self.coeffs)
        return int(nonzero[-1]) if nonzero.size else 0

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other: 'TaylorPoly') -> 'TaylorPoly':
        length = max(len(self.coeffs), len(other.coeffs))
        return TaylorPoly(self.padded(length) + other.padded(length))

    def __sub__(self, other: 'TaylorPoly') -> 'TaylorPoly':
        return self + other.scaled(-1.0)

    def scaled(self, c: complex) -> 'TaylorPoly':
        return TaylorPoly(self.coeffs * c)

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(max(length, len(self.coeffs)), dtype=complex)
        out[:len(self.coeffs)] = self.coeffs
        return out

    def trimmed(self, tol: float = 0.0) -> 'TaylorPoly':
        """|c_n| ≤ tol 인 계수를 0으로 만들고 꼬리를 잘라냄"""
        coeffs = np.where(np.abs(self.coeffs) > tol, self.coeffs, 0)
        nonzero = np.flatnonzero(coeffs)
        last = int(nonzero[-1]) if nonzero.size else 0
        return TaylorPoly(coeffs[:last + 1])

    def derivative(self) -> 'TaylorPoly':
        if len(self.coeffs) == 1:
            return TaylorPoly([0.0])
        n = np.arange(1, len(self.coeffs))
        return TaylorPoly(self.coeffs[1:] * n)

    def times_z(self) -> 'TaylorPoly':
        return TaylorPoly(np.concatenate(([0.0], self.coeffs)))

    def divide_by_z(self) -> 'TaylorPoly':
        if self.coeffs[0] != 0:
            raise ValueError(f"z 로 나눌 수 없습니다: 상수항 {self.coeffs[0]} ≠ 0")
        return TaylorPoly(self.coeffs[1:])

    def rotated(self, alpha: float) -> 'TaylorPoly':
        """F(e^{iα} z)"""
        n = np.arange(len(self.coeffs))
        return TaylorPoly(self.coeffs * np.exp(1j * alpha * n))


def evaluate(f: TaylorPoly, z):
    """Horner 방식 다항식 값"""
    z = np.asarray(z, dtype=complex)
    result = np.zeros_like(z)
    for c in f.coeffs[::-1]:
        result = result * z + c
    if result.ndim == 0:
        return complex(result)
    return result


@dataclass(frozen=True, eq=False)
class BoundarySamples:
    """∂𝔻 의 균등 격자 θ_j = 2πj/M 위의 복소값"""
    values: np.ndarray

    def __post_init__(self):
        values = _frozen_array(self.values)
        M = values.size
        if M < 2 or M & (M - 1):
            raise ValueError(f"경계 격자 크기는 2의 거듭제곱이어야 합니다: M={M}")
        object.__setattr__(self, 'values', values)

    @property
    def M(self) -> int:
        return self.values.size

    @property
    def thetas(self) -> np.ndarray:
        return boundary_thetas(self.M)

    @classmethod
    def from_poly(cls, f: TaylorPoly, M: Optional[int] = None) -> 'BoundarySamples':
        if M is None:
            M = default_grid_size(f.degree)
        if M < 2 * f.degree + 2:
            raise ValueError(f"격자가 너무 작습니다: M={M}, 차수={f.degree}")
        return cls(evaluate(f, np.exp(1j * boundary_thetas(M))))

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], M: int) -> 'BoundarySamples':
        return cls(func(boundary_thetas(M)))

    @classmethod
    def from_fourier(cls, coefficients: Dict[int, complex], M: int) -> 'BoundarySamples':
        """주파수 -> 계수 사전으로부터 Σ c_n e^{inθ}"""
        thetas = boundary_thetas(M)
        values = np.zeros(M, dtype=complex)
        for n, c in sorted(coefficients.items()):
            if abs(n) >= M // 2:
                raise ValueError(f"주파수 {n} 은 격자 M={M} 에서 표현할 수 없습니다")
            values = values + c * np.exp(1j * n * thetas)
        return cls(values)

    def coefficients(self) -> np.ndarray:
        """DFT 계수 (인덱스 n mod M)"""
        return np.fft.fft(self.values) / self.M

    def lp_norm(self, p: float) -> float:
        if p <= 0:
            raise ValueError(f"지수는 양수여야 합니다: p={p}")
        return float(np.mean(np.abs(self.values) ** p) ** (1.0 / p))

    def __add__(self, other: 'BoundarySamples') -> 'BoundarySamples':
        return BoundarySamples(self.values + other.values)

    def __sub__(self, other: 'BoundarySamples') -> 'BoundarySamples':
        return BoundarySamples(self.values - other.values)

    def scaled(self, c: complex) -> 'BoundarySamples':
        return BoundarySamples(self.values * c)

    def times_z(self) -> 'BoundarySamples':
        return BoundarySamples(self.values * np.exp(1j * self.thetas))


def boundary_thetas(M: int) -> np.ndarray:
    return 2 * np.pi * np.arange(M) / M


@dataclass(frozen=True, eq=False)
class PolarGrid:
    """
    원판 위 텐서 구적: 반지름은 [0, radius] 의 Gauss-Legendre, 각도는 균등.
    weights 는 야코비안 r 과 dA/π 정규화를 포함합니다.
    """
    r_nodes: np.ndarray
    r_weights: np.ndarray
    n_theta: int
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'r_nodes', _frozen_array(self.r_nodes, dtype=float))
        object.__setattr__(self, 'r_weights', _frozen_array(self.r_weights, dtype=float))
        thetas = boundary_thetas(self.n_theta)
        points = self.r_nodes[:, None] * np.exp(1j * thetas)[None, :]
        weights = np.repeat((self.r_weights * self.r_nodes * 2.0 / self.n_theta)[:, None],
                            self.n_theta, axis=1)
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, 'thetas', thetas)
        object.__setattr__(self, 'points', points)
        object.__setattr__(self, 'weights', weights)

    @property
    def n_r(self) -> int:
        return self.r_nodes.size

    @property
    def max_projection_degree(self) -> int:
        """모멘트 적분이 정확한 최대 출력 차수"""
        return min(self.n_theta // 2 - 1, 2 * self.n_r - 1)

    def integrate(self, values) -> complex:
        """∫ values dA/π (고정된 합산 순서)"""
        values = np.asarray(values)
        return np.sum(values * self.weights)

    def evaluate(self, f: TaylorPoly) -> np.ndarray:
        return evaluate(f, self.points)

    def describe(self) -> dict:
        return {'n_r': self.n_r, 'n_theta': self.n_theta, 'radius': self.radius}


@lru_cache(maxsize=32)
def make_polar_grid(n_r: Optional[int] = None, n_theta: Optional[int] = None,
                    radius: float = 1.0) -> PolarGrid:
    if n_r is None:
        n_r = NUMERIC_SETTINGS['radial_order']
    if n_theta is None:
        n_theta = NUMERIC_SETTINGS['angular_size']
    x, w = np.polynomial.legendre.leggauss(n_r)
    r_nodes = radius * (x + 1) / 2
    r_weights = radius * w / 2
    logger.debug(f"PolarGrid 생성: n_r={n_r}, n_theta={n_theta}, radius={radius}")
    return PolarGrid(r_nodes, r_weights, n_theta, radius)


@dataclass(frozen=True, eq=False)
class NormReport:
    p: float
    radii: np.ndarray
    means: np.ndarray
    norm_estimate: float


def _check_exponent(p: float):
    if p <= 0:
        raise ValueError(f"지수는 양수여야 합니다: p={p}")


def integral_mean(f: TaylorPoly, r: float, p: float, M: Optional[int] = None) -> float:
    """M_p(r,f) 의 사다리꼴 근사"""
    _check_exponent(p)
    if M is None:
        M = default_grid_size(f.degree)
    values = evaluate(f, r * np.exp(1j * boundary_thetas(M)))
    return float(np.mean(np.abs(values) ** p) ** (1.0 / p))


def hardy_norm(f: TaylorPoly, p: float, M: Optional[int] = None,
               radii: Optional[Sequence[float]] = None) -> NormReport:
    _check_exponent(p)
    if radii is None:
        radii = np.linspace(0.0, 1.0, 50)
    radii = np.asarray(radii, dtype=float)
    means = np.array([integral_mean(f, r, p, M) for r in radii])
    # 다항식은 r=1 에서 상한에 도달
    norm_estimate = max(float(np.max(means)), integral_mean(f, 1.0, p, M))
    return NormReport(p, radii, means, norm_estimate)


def lp_disc_norm(values, p: float, grid: PolarGrid) -> float:
    """(∫ |v|^p dA/π)^{1/p}"""
    _check_exponent(p)
    total = grid.integrate(np.abs(np.asarray(values)) ** p).real
    return float(total ** (1.0 / p))


def bergman_norm(f: TaylorPoly, p: float, grid: Optional[PolarGrid] = None) -> float:
    if grid is None:
        grid = make_polar_grid()
    return lp_disc_norm(grid.evaluate(f), p, grid)


def lift_values(values, p: float) -> np.ndarray:
    """|v|^{p-2} v. v=0 인 노드는 0."""
    values = np.asarray(values, dtype=complex)
    modulus = np.abs(values)
    out = np.zeros_like(values)
    nonzero = modulus > 0
    out[nonzero] = modulus[nonzero] ** (p - 2) * values[nonzero]
    return out


def nonlinear_lift(F: TaylorPoly, p: float,
                   where: Union[int, BoundarySamples, PolarGrid]):
    """
    f = F^{p/2} F̄^{(p/2)-1} = |F|^{p-2} F 를 노드에서 계산합니다.
    where 가 PolarGrid 이면 (n_r, n_theta) 배열, 격자 크기(또는 BoundarySamples)면
    BoundarySamples 를 반환합니다.
    """
    if p <= 1:
        raise ValueError(f"비선형 리프트는 p > 1 이 필요합니다: p={p}")
    if isinstance(where, PolarGrid):
        return lift_values(where.evaluate(F), p)
    M = where.M if isinstance(where, BoundarySamples) else int(where)
    return BoundarySamples(lift_values(BoundarySamples.from_poly(F, M).values, p))


def check_isoperimetric(h: TaylorPoly, p: float, grid: Optional[PolarGrid] = None,
                        M: Optional[int] = None) -> Tuple[float, float, bool]:
    """‖h‖_{A^{2p}} ≤ ‖h‖_{H^p}"""
    if p <= 0.5:
        raise ValueError(f"등주 부등식 검사는 p > 1/2 가 필요합니다: p={p}")
    a_norm = bergman_norm(h, 2 * p, grid)
    h_norm = integral_mean(h, 1.0, p, M)
    ok = a_norm <= h_norm + 1e-9
    if not ok:
        logger.warning(f"등주 부등식 위반: ‖h‖_A={a_norm}, ‖h‖_H={h_norm}, p={p}")
    return a_norm, h_norm, ok


@dataclass(frozen=True, eq=False)
class ZZbarPoly:
    """Σ c[a,b] z^a z̄^b"""
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', _frozen_array(self.coeffs, ndim=2))

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, int], complex]) -> 'ZZbarPoly':
        size_a = max(a for a, _ in terms) + 1
        size_b = max(b for _, b in terms) + 1
        coeffs = np.zeros((size_a, size_b), dtype=complex)
        for (a, b), c in terms.items():
            coeffs[a, b] += c
        return cls(coeffs)

    @classmethod
    def monomial(cls, a: int, b: int, c: complex = 1.0) -> 'ZZbarPoly':
        return cls.from_terms({(a, b): c})

    @classmethod
    def from_taylor(cls, f: TaylorPoly) -> 'ZZbarPoly':
        return cls(f.coeffs[:, None])

    def terms(self):
        for a, b in zip(*np.nonzero(self.coeffs)):
            yield int(a), int(b), complex(self.coeffs[a, b])

    def evaluate(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        size_a, size_b = self.coeffs.shape
        z_powers = z[..., None] ** np.arange(size_a)
        zbar_powers = np.conj(z)[..., None] ** np.arange(size_b)
        return np.einsum('...a,ab,...b->...', z_powers, self.coeffs, zbar_powers)

    def __call__(self, z):
        return self.evaluate(z)

    def __add__(self, other: 'ZZbarPoly') -> 'ZZbarPoly':
        shape = (max(self.coeffs.shape[0], other.coeffs.shape[0]),
                 max(self.coeffs.shape[1], other.coeffs.shape[1]))
        out = np.zeros(shape, dtype=complex)
        out[:self.coeffs.shape[0], :self.coeffs.shape[1]] += self.coeffs
        out[:other.coeffs.shape[0], :other.coeffs.shape[1]] += other.coeffs
        return ZZbarPoly(out)

    def dz(self) -> 'ZZbarPoly':
        size_a, size_b = self.coeffs.shape
        if size_a == 1:
            return ZZbarPoly(np.zeros((1, size_b)))
        return ZZbarPoly(self.coeffs[1:, :] * np.arange(1, size_a)[:, None])

    def dzbar(self) -> 'ZZbarPoly':
        size_a, size_b = self.coeffs.shape
        if size_b == 1:
            return ZZbarPoly(np.zeros((size_a, 1)))
        return ZZbarPoly(self.coeffs[:, 1:] * np.arange(1, size_b)[None, :])

    def times_zbar(self) -> 'ZZbarPoly':
        size_a, size_b = self.coeffs.shape
        out = np.zeros((size_a, size_b + 1), dtype=complex)
        out[:, 1:] = self.coeffs
        return ZZbarPoly(out)

    def total_degree(self) -> int:
        degrees = [a + b for a, b, _ in self.terms()]
        return max(degrees) if degrees else 0
