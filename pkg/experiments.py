# experiments.py

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from config import CORPUS_SETTINGS, EXPONENT_MENU, NUMERIC_SETTINGS
from disc_core import (
    BoundarySamples,
    PolarGrid,
    TaylorPoly,
    ZZbarPoly,
    boundary_thetas,
    check_isoperimetric,
    default_grid_size,
    lp_disc_norm,
    make_polar_grid,
    nonlinear_lift,
)
from dual_approx import (
    best_analytic_approx,
    cross_norm_report,
    solve_dual_min,
    solve_duality,
)
from experiment_config import ExperimentConfig
from extremal import (
    default_degree_cap,
    optimality_residual_bergman,
    optimality_residual_hardy,
    ryabykh_profile,
    solve_bergman_extremal,
    solve_hardy_extremal,
)
from ledger import ConstantsLedger, assemble_ctilde, load_or_build_ledger
from projections import (
    bergman_project_exact,
    bergman_project_monomial,
    bergman_project_quadrature_monomial,
    szego_norm_check,
    szego_project,
    szego_samples,
)
from squarefn import (
    GradField,
    boundary_lp_mean,
    calderon_ratios,
    dz_field,
    grad_modulus_power,
    lift_product_laplacian,
    origin_zero_order,
    square_function_profile,
)
from sweep_runner import run_sweep
from utils import (
    conjugate_exponent,
    random_coefficient_corpus,
    random_trig_corpus,
    random_zzbar_coefficients,
)

# 로깅 설정
logger = logging.getLogger(__name__)

# 이름 붙은 커널 (켤레 쌍 기준 계수)
KERNEL_FAMILIES = {
    'one': [1.0],
    'z': [0.0, 1.0],
    'one-plus-half-z': [1.0, 0.5],
}


@dataclass
class GreenIdentityResult:
    lhs: complex
    rhs: complex
    relative_error: float


def green_identity_check(F: TaylorPoly, h: TaylorPoly, p: float, grid: Optional[PolarGrid] = None,
                         M: Optional[int] = None) -> GreenIdentityResult:
    """
    (1/2π)∫ f h dθ = (1/2)∫ Δ(fh) log(1/|z|) dA/π, f = |F|^{p-2}F, h(0) = 0.
    """
    if abs(h.coeffs[0]) > 0:
        raise ValueError(f"h(0)=0 이 필요합니다: h(0)={h.coeffs[0]}")
    if grid is None:
        grid = make_polar_grid()
    if M is None:
        M = max(grid.n_theta, 4 * default_grid_size(F.degree + h.degree))
    lhs = complex(np.mean(nonlinear_lift(F, p, M).values * BoundarySamples.from_poly(h, M).values))
    integrand = lift_product_laplacian(F, h, p, grid) * np.log(1.0 / np.abs(grid.points))
    rhs = complex(0.5 * grid.integrate(integrand))
    relative_error = abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1e-12)
    logger.debug(f"그린 항등식 p={p}: 좌변 {lhs:.12g}, 우변 {rhs:.12g}, 상대오차 {relative_error:.3e}")
    return GreenIdentityResult(lhs, rhs, relative_error)


def _sz_norm(f: ZZbarPoly, p: float, grid: PolarGrid) -> float:
    profile = square_function_profile(dz_field(f.dz().evaluate(grid.points), grid))
    return boundary_lp_mean(profile, p)


def bpinhardy_ratio(f: ZZbarPoly, p: float, grid: Optional[PolarGrid] = None,
                    M: Optional[int] = None) -> Tuple[float, float, float]:
    """‖𝒫f‖_{H^p} 와 ‖S_z f‖_p + ‖f‖_{L^{2p/(p+1)}(𝔻)} 의 비"""
    if p <= 1:
        raise ValueError(f"1 < p 가 필요합니다: p={p}")
    if grid is None:
        grid = make_polar_grid()
    projection = bergman_project_exact(f)
    if M is None:
        M = default_grid_size(f.total_degree())
    lhs = BoundarySamples.from_poly(projection, M).lp_norm(p)
    rhs = _sz_norm(f, p, grid) + lp_disc_norm(f.evaluate(grid.points), 2 * p / (p + 1), grid)
    ratio = lhs / rhs if rhs > 0 else 0.0
    return lhs, rhs, ratio


def bpinhardy_zbar_ratio(f: ZZbarPoly, p: float, grid: Optional[PolarGrid] = None,
                         M: Optional[int] = None) -> float:
    """‖𝒫(z̄f)‖_{H^p} / ‖S_z f‖_p"""
    if p <= 1:
        raise ValueError(f"1 < p 가 필요합니다: p={p}")
    if grid is None:
        grid = make_polar_grid()
    projection = bergman_project_exact(f.times_zbar())
    if M is None:
        M = default_grid_size(f.total_degree() + 1)
    lhs = BoundarySamples.from_poly(projection, M).lp_norm(p)
    sz = _sz_norm(f, p, grid)
    return lhs / sz if sz > 0 else 0.0


@dataclass
class BoundCheck:
    lhs: float
    rhs: Optional[float]
    ok: Optional[bool]
    applicable: bool
    ctilde: float


def hardy_extremal_bound_check(k: TaylorPoly, p: float, q: float, ledger: Optional[ConstantsLedger],
                               N: Optional[int] = None, tol: float = 1e-8,
                               tolerance: float = 1e-6) -> BoundCheck:
    """‖F‖^{p-1}_{(p-1)q} ≤ (1/(1-C̃_{q,p}))·‖k‖_q / ‖k‖_{(H^p)^*}"""
    ctilde = assemble_ctilde(q, p, ledger)
    if N is None:
        N = default_degree_cap(k)
    M = 2 * default_grid_size(N)
    if ctilde >= 1:
        logger.info(f"극값 함수 상한 검사 적용 불가: C̃={ctilde:.6g} ≥ 1 (p={p}, q={q})")
        return BoundCheck(float('nan'), None, None, False, ctilde)
    solution = solve_hardy_extremal(k, p, N, tol, M=M)
    if not solution.converged:
        logger.warning(f"극값 함수 상한 검사: 해가 수렴하지 않았습니다 (잔차 {solution.residual:.3e})")
    lhs = BoundarySamples.from_poly(solution.F, M).lp_norm((p - 1) * q) ** (p - 1)
    rhs = BoundarySamples.from_poly(k, M).lp_norm(q) / solution.lam / (1 - ctilde)
    return BoundCheck(lhs, rhs, lhs <= rhs * (1 + tolerance), True, ctilde)


def szego_lower_bound_check(F: TaylorPoly, p: float, q: float, ledger: Optional[ConstantsLedger],
                            M: Optional[int] = None, tolerance: float = 1e-9) -> BoundCheck:
    """‖P_S f‖_q ≥ (1 - C̃_{q,p})‖f‖_q, f = |F|^{p-2}F 경계값"""
    ctilde = assemble_ctilde(q, p, ledger)
    if M is None:
        M = max(256, 4 * default_grid_size(F.degree))
    if ctilde >= 1:
        return BoundCheck(float('nan'), None, None, False, ctilde)
    lifted = nonlinear_lift(F, p, M)
    lhs = szego_samples(lifted).lp_norm(q)
    rhs = (1 - ctilde) * lifted.lp_norm(q)
    return BoundCheck(lhs, rhs, lhs >= rhs * (1 - tolerance), True, ctilde)


class LedgerAccess:
    """필요할 때만 원장을 불러오거나 계산합니다."""

    def __init__(self, config: ExperimentConfig, ledger: Optional[ConstantsLedger] = None):
        self.config = config
        self._ledger = ledger
        self.used = False

    def get(self) -> ConstantsLedger:
        if self._ledger is None:
            logger.info("[LedgerAccess] 상수 원장 준비")
            self._ledger = load_or_build_ledger(self.config)
        self.used = True
        return self._ledger

    def ctilde(self, q: float, p: float) -> float:
        if p == 2:
            return 0.0
        return assemble_ctilde(q, p, self.get())

    def for_exponent(self, p: float) -> Optional[ConstantsLedger]:
        return None if p == 2 else self.get()

    def snapshot(self) -> Optional[dict]:
        return self._ledger.to_dict() if self.used and self._ledger is not None else None


@dataclass
class ExperimentResult:
    name: str
    rows: List[Dict] = field(default_factory=list)
    diagnostics: Dict = field(default_factory=dict)
    ledger: Optional[dict] = None

    @property
    def all_pass(self) -> bool:
        return all(row['pass'] is not False for row in self.rows)


ExperimentFunc = Callable[[ExperimentConfig, LedgerAccess, ExperimentResult], None]
EXPERIMENTS: Dict[str, ExperimentFunc] = {}


def experiment(name: str):
    def register(func: ExperimentFunc) -> ExperimentFunc:
        EXPERIMENTS[name] = func
        return func
    return register


def make_row(config: ExperimentConfig, kernel_id: str, lhs=None, rhs=None, ratio=None,
             tolerance=None, passed=None, p=None, q=None, grid_M=None) -> Dict:
    return {
        'experiment': config.experiment,
        'p': p,
        'q': q,
        'kernel_id': kernel_id,
        'lhs': lhs,
        'rhs': rhs,
        'ratio': ratio,
        'tolerance': tolerance,
        'pass': None if passed is None else bool(passed),
        'grid_M': grid_M,
        'grid_R': config.grid_r,
        'seed': config.seed,
    }


def _exponents(config: ExperimentConfig, default) -> List[float]:
    return [config.p] if config.p is not None else list(default)


def _kernels(config: ExperimentConfig, count: int) -> List[Tuple[str, TaylorPoly]]:
    """설정의 커널, 이름 붙은 커널, 또는 시드 코퍼스"""
    if config.kernel is not None:
        return [('config', config.kernel_poly())]
    if config.kernel_family and config.kernel_family != 'random':
        if config.kernel_family not in KERNEL_FAMILIES:
            raise ValueError(f"알 수 없는 커널 이름: {config.kernel_family}")
        return [(config.kernel_family, TaylorPoly(KERNEL_FAMILIES[config.kernel_family]))]
    corpus = random_coefficient_corpus(config.seed, config.sample_count(count), config.max_degree)
    return [(f"corpus-{idx}", TaylorPoly(c)) for idx, c in enumerate(corpus)]


def _coefficient_error(f: TaylorPoly, g: TaylorPoly) -> float:
    length = max(len(f.coeffs), len(g.coeffs))
    return float(np.max(np.abs(f.padded(length) - g.padded(length))))


@experiment('monomial-projection')
def run_monomial_projection(config, access, result):
    grid = config.polar_grid()
    max_ab = config.degree_cap if config.degree_cap is not None else 10
    tolerance = 1e-8
    for a in range(max_ab + 1):
        for b in range(max_ab + 1):
            closed = bergman_project_monomial(a, b)
            quadrature = bergman_project_quadrature_monomial(a, b, grid, N=a + 1)
            error = _coefficient_error(closed, quadrature)
            result.rows.append(make_row(config, f"a{a}b{b}", lhs=error, tolerance=tolerance,
                                        passed=error < tolerance))


@experiment('szego-norm')
def run_szego_norm(config, access, result):
    M = config.grid_m or default_grid_size(config.max_degree)
    corpus = [BoundarySamples.from_fourier(c, M) for c in random_trig_corpus(
        config.seed, config.sample_count(CORPUS_SETTINGS['samples_per_cell']), config.max_degree)]
    for p in _exponents(config, (4 / 3, 2.0, 4.0)):
        max_ratio, bound, ok = szego_norm_check(corpus, p)
        result.rows.append(make_row(config, 'trig-corpus', lhs=max_ratio, rhs=bound,
                                    ratio=max_ratio / bound, tolerance=1e-8, passed=ok, p=p, grid_M=M))


@experiment('cone-geometry')
def run_cone_geometry(config, access, result):
    grid = config.polar_grid()
    thetas = boundary_thetas(64)
    checks = [
        ('constant-field', GradField(np.ones(grid.points.shape), grid), np.sqrt(0.5), 1e-8),
        ('z-squared', grad_modulus_power(TaylorPoly.monomial(2), 1.0, grid), np.sqrt(1 / 3), 1e-6),
        ('abs-z-squared-Sz', dz_field(np.conj(grid.points), grid), np.sqrt(1 / 12), 1e-6),
    ]
    for kernel_id, field_values, expected, tolerance in checks:
        error = float(np.max(np.abs(square_function_profile(field_values, thetas) - expected)))
        result.rows.append(make_row(config, kernel_id, lhs=error, rhs=expected, tolerance=tolerance,
                                    passed=error < tolerance))

    # 회전 동변성: S(F(e^{iα}·))(θ) = S(F)(θ+α)
    alpha = 0.3
    for kernel_id, F in _kernels(config, 5):
        base = square_function_profile(grad_modulus_power(F, 1.0, grid), thetas + alpha)
        rotated = square_function_profile(grad_modulus_power(F.rotated(alpha), 1.0, grid), thetas)
        error = float(np.max(np.abs(base - rotated)))
        result.rows.append(make_row(config, f"rotation-{kernel_id}", lhs=error, tolerance=1e-8,
                                    passed=error < 1e-8))


@experiment('calderon-sweep')
def run_calderon_sweep(config, access, result):
    size = config.sample_count(50)
    corpus = [TaylorPoly(c) for c in random_coefficient_corpus(config.seed, size, config.max_degree)]
    vanishing = [TaylorPoly(c) for c in random_coefficient_corpus(
        config.seed + 1, size, config.max_degree, vanish_at_origin=True)]
    coarse = config.polar_grid()
    fine = make_polar_grid(2 * config.grid_r, 2 * config.grid_theta)
    tolerance = 0.02
    cells = [(p, delta) for p in CORPUS_SETTINGS['calderon_exponents']
             for delta in CORPUS_SETTINGS['calderon_deltas']]

    def sweep_cell(cell):
        p, delta = cell

        def pairs_for(polys, index):
            pairs, divergent = [], 0
            for F in polys:
                order = origin_zero_order(F)
                if order > 0 and delta * order <= 0.5:
                    divergent += 1
                    continue
                pair = (calderon_ratios(F, delta, p, coarse)[index],
                        calderon_ratios(F, delta, p, fine)[index])
                if pair[0] is not None and pair[1] is not None:
                    pairs.append(pair)
            return pairs, divergent

        return pairs_for([F for F in corpus if not F.is_zero()], 0), pairs_for(vanishing, 1)

    def summarize(pairs):
        values = np.array(pairs, dtype=float).reshape(-1, 2)
        finite = bool(np.all(np.isfinite(values)))
        usable = values[:, 0] > 0
        change = float(np.max(np.abs(values[usable, 1] / values[usable, 0] - 1))) if np.any(usable) else 0.0
        return float(np.max(values[:, 0], initial=0.0)), float(np.max(values[:, 1], initial=0.0)), \
            change, finite

    outcomes = run_sweep(cells, sweep_cell, label='calderon-sweep')
    for (p, delta), (upper, lower) in zip(cells, outcomes):
        for kind, (pairs, divergent) in (('upper', upper), ('lower', lower)):
            kernel_id = f"{kind}-delta{delta:g}"
            coarse_max, fine_max, change, finite = summarize(pairs)
            # 발산 항목만 있는 칸은 판정하지 않음
            passed = (finite and change < tolerance) if pairs else None
            result.rows.append(make_row(config, kernel_id, lhs=coarse_max, rhs=fine_max,
                                        ratio=change, tolerance=tolerance, passed=passed, p=p,
                                        grid_M=coarse.n_theta))
            if divergent:
                result.diagnostics[f"{kernel_id}-p{p:g}"] = {'divergent': divergent, 'measured': len(pairs)}


@experiment('isoperimetric')
def run_isoperimetric(config, access, result):
    grid = config.polar_grid()
    kernels = _kernels(config, 50)
    for p in _exponents(config, EXPONENT_MENU):
        worst, passed = 0.0, True
        for _, h in kernels:
            a_norm, h_norm, ok = check_isoperimetric(h, p, grid, config.grid_m)
            worst = max(worst, a_norm / h_norm if h_norm > 0 else 0.0)
            passed = passed and ok
        result.rows.append(make_row(config, 'corpus', lhs=worst, rhs=1.0, ratio=worst, tolerance=1e-9,
                                    passed=passed, p=p))


@experiment('hilbert-closed-forms')
def run_hilbert_closed_forms(config, access, result):
    grid = config.polar_grid()
    for kernel_id, k in _kernels(config, 20):
        if k.is_zero():
            continue
        weights = 1.0 / np.arange(1, len(k.coeffs) + 1)
        bergman_norm2 = float(np.sqrt(np.sum(weights * np.abs(k.coeffs) ** 2)))
        hardy_norm2 = float(np.sqrt(np.sum(np.abs(k.coeffs) ** 2)))
        bergman = solve_bergman_extremal(k, 2.0, config.degree_cap, config.tol, grid=grid)
        hardy = solve_hardy_extremal(k, 2.0, config.degree_cap, config.tol, M=config.grid_m)
        for space, solution, norm2, residual in (
            ('bergman', bergman, bergman_norm2,
             optimality_residual_bergman(bergman.F, k, bergman.lam, 2.0, grid)),
            ('hardy', hardy, hardy_norm2,
             optimality_residual_hardy(hardy.F, k, hardy.lam, 2.0, config.grid_m)),
        ):
            error = _coefficient_error(solution.F, k.scaled(1 / norm2))
            result.rows.append(make_row(config, f"{space}-{kernel_id}", lhs=error, rhs=residual,
                                        ratio=solution.lam / norm2, tolerance=1e-6,
                                        passed=error < 1e-6 and residual < 1e-8, p=2.0))


@experiment('optimality')
def run_optimality(config, access, result):
    grid = config.polar_grid()
    tolerance = 1e-3
    tasks = [(p, kernel_id, k) for p in _exponents(config, (4 / 3, 4.0))
             for kernel_id, k in _kernels(config, 10) if not k.is_zero()]

    def solve(task):
        p, _, k = task
        bergman = solve_bergman_extremal(k, p, config.degree_cap, config.tol, grid=grid)
        hardy = solve_hardy_extremal(k, p, config.degree_cap, config.tol, M=config.grid_m)
        return (
            optimality_residual_bergman(bergman.F, k, bergman.lam, p, grid),
            optimality_residual_hardy(hardy.F, k, hardy.lam, p, config.grid_m),
            bergman.iterations,
            hardy.iterations,
        )

    outcomes = run_sweep(tasks, solve, label='optimality')
    for (p, kernel_id, _), (bergman_res, hardy_res, bergman_it, hardy_it) in zip(tasks, outcomes):
        result.rows.append(make_row(config, f"bergman-{kernel_id}", lhs=bergman_res, tolerance=tolerance,
                                    passed=bergman_res < tolerance, p=p))
        result.rows.append(make_row(config, f"hardy-{kernel_id}", lhs=hardy_res, tolerance=tolerance,
                                    passed=hardy_res < tolerance, p=p))
        result.diagnostics[f"iterations-{kernel_id}-p{p:g}"] = {'bergman': bergman_it, 'hardy': hardy_it}


@experiment('ryabykh')
def run_ryabykh(config, access, result):
    p = config.p if config.p is not None else 4.0
    q = config.q if config.q is not None else 2.0
    if config.kernel is None and config.kernel_family is None:
        kernels = [(name, TaylorPoly(c)) for name, c in KERNEL_FAMILIES.items()]
    else:
        kernels = _kernels(config, 3)
    grid = config.polar_grid()
    for space in ('bergman', 'hardy'):
        for kernel_id, k in kernels:
            profile = ryabykh_profile(k, p, q, space, N=config.degree_cap, tol=config.tol, grid=grid)
            means = np.array(profile.extremal_means)
            bounded = bool(np.all(np.isfinite(means)) and np.all(np.diff(means) >= -1e-9 * means[-1]))
            for r, extremal_mean, kernel_mean in profile.rows():
                result.rows.append(make_row(config, f"{space}-{kernel_id}-r{r:g}", lhs=extremal_mean,
                                            rhs=kernel_mean, passed=bounded, p=p, q=q))
            result.diagnostics[f"{space}-{kernel_id}"] = {
                'exponent': profile.exponent,
                'residual': profile.solution.residual,
                'converged': profile.solution.converged,
            }


@experiment('duality')
def run_duality(config, access, result):
    p = config.p if config.p is not None else 4.0
    # 점별 횔더 검사에는 원문제 잔차가 1e-10 수준이어야 함
    tol = min(config.tol, NUMERIC_SETTINGS['duality_tol'])
    for kernel_id, k in _kernels(config, 10):
        if k.is_zero():
            continue
        report = solve_duality(k, p, N=config.degree_cap, tol=tol)
        passed = report.gap < 1e-4 and report.kernel_residual < 1e-3 and report.holder_deviation < 1e-4
        result.rows.append(make_row(config, kernel_id, lhs=report.primal.lam, rhs=report.dual.min_norm,
                                    ratio=report.gap, tolerance=1e-4, passed=passed, p=p,
                                    grid_M=report.kappa.M))
        result.diagnostics[kernel_id] = {
            'kernel_residual': report.kernel_residual,
            'holder_deviation': report.holder_deviation,
            'primal_converged': report.primal.converged,
            'dual_converged': report.dual.converged,
            'degree_cap': report.dual.diagnostics['degree_cap'],
        }


def _boundary_corpus(config: ExperimentConfig, count: int) -> List[BoundarySamples]:
    M = config.grid_m or 4 * default_grid_size(config.max_degree)
    return [BoundarySamples.from_fourier(c, M)
            for c in random_trig_corpus(config.seed, config.sample_count(count), config.max_degree)]


@experiment('best-approx')
def run_best_approx(config, access, result):
    for idx, k in enumerate(_boundary_corpus(config, 20)):
        f, distance = best_analytic_approx(k, 2.0, config.degree_cap)
        error = _coefficient_error(f, szego_project(k))
        result.rows.append(make_row(config, f"trig-{idx}", lhs=error, rhs=distance, tolerance=1e-8,
                                    passed=error < 1e-8, p=2.0, grid_M=k.M))

        p = config.p if config.p not in (None, 2.0) else 4.0
        f, distance = best_analytic_approx(k, p, config.degree_cap)
        # ‖k - f‖ = ‖zk - zf‖, zf ∈ H_0: 분해 없이 k 전체로 푼 최소값
        direct = solve_dual_min(k.times_z(), p, config.degree_cap).min_norm
        gap = abs(distance - direct)
        shifted = k + BoundarySamples.from_poly(TaylorPoly([0.5, -0.25j, 0.125]), k.M)
        _, shifted_distance = best_analytic_approx(shifted, p, config.degree_cap)
        result.rows.append(make_row(config, f"trig-{idx}", lhs=distance, rhs=direct, ratio=gap,
                                    tolerance=1e-4, passed=gap < 1e-4, p=p, grid_M=k.M))
        result.diagnostics[f"trig-{idx}-translation"] = abs(shifted_distance - distance)


@experiment('cross-norm')
def run_cross_norm(config, access, result):
    p = config.p if config.p is not None else 2.0
    p_prime = conjugate_exponent(p)
    for idx, k in enumerate(_boundary_corpus(config, 10)):
        f, _ = best_analytic_approx(k, p, config.degree_cap)
        for q in ([config.q] if config.q is not None else config.q_values):
            report = cross_norm_report(f, k, q, access.ctilde(q, p_prime))
            result.rows.append(make_row(
                config, f"trig-{idx}", lhs=report.f_norm_q, rhs=report.bound,
                ratio=report.f_norm_q / report.bound if report.applicable and report.bound else None,
                tolerance=1e-9, passed=report.ok, p=p, q=q, grid_M=k.M))
            if report.applicable:
                result.rows.append(make_row(
                    config, f"trig-{idx}-distance", lhs=report.distance_q, rhs=report.distance_bound,
                    ratio=report.distance_q / report.distance_bound if report.distance_bound else None,
                    tolerance=1e-9, passed=report.distance_ok, p=p, q=q, grid_M=k.M))
            result.diagnostics[f"trig-{idx}-q{q:g}"] = {'lemma_bound': report.bound_lemma,
                                                       'applicable': report.applicable}


@experiment('green-identity')
def run_green_identity(config, access, result):
    grid = config.polar_grid()
    # log(1/r) 구적 검증: ∫ |z|^{2m} log(1/|z|) dA/π = 2/(2m+2)²
    for m in range(9):
        values = np.abs(grid.points) ** (2 * m) * np.log(1.0 / np.abs(grid.points))
        quadrature = float(grid.integrate(values).real)
        exact = 2.0 / (2 * m + 2) ** 2
        error = abs(quadrature - exact) / exact
        result.rows.append(make_row(config, f"log-moment-{m}", lhs=quadrature, rhs=exact, ratio=error,
                                    tolerance=1e-6, passed=error < 1e-6))

    size = config.sample_count(10)
    shapes = random_coefficient_corpus(config.seed, size, config.max_degree)
    vanishing = random_coefficient_corpus(config.seed + 1, size, config.max_degree, vanish_at_origin=True)
    for p in _exponents(config, (3.0, 4.0)):
        for idx, (shape, h_coeffs) in enumerate(zip(shapes, vanishing)):
            # 닫힌 원판에서 |F| ≥ 1/2
            F = TaylorPoly([1.0]) + TaylorPoly(shape).scaled(1 / (2 * np.sum(np.abs(shape))))
            outcome = green_identity_check(F, TaylorPoly(h_coeffs), p, grid)
            result.rows.append(make_row(config, f"pair-{idx}", lhs=abs(outcome.lhs), rhs=abs(outcome.rhs),
                                        ratio=outcome.relative_error, tolerance=1e-6,
                                        passed=outcome.relative_error < 1e-6, p=p))


@experiment('bpinhardy')
def run_bpinhardy(config, access, result):
    coarse = config.polar_grid()
    fine = make_polar_grid(2 * config.grid_r, 2 * config.grid_theta)
    corpus = [ZZbarPoly(c) for c in random_zzbar_coefficients(config.seed, config.sample_count(100))]
    tolerance = 0.02
    for p in _exponents(config, (4 / 3, 2.0, 4.0)):
        coarse_max = max(bpinhardy_ratio(f, p, coarse)[2] for f in corpus)
        fine_max = max(bpinhardy_ratio(f, p, fine)[2] for f in corpus)
        change = abs(fine_max / coarse_max - 1) if coarse_max > 0 else 0.0
        result.rows.append(make_row(config, 'zzbar-corpus', lhs=coarse_max, rhs=fine_max, ratio=change,
                                    tolerance=tolerance, passed=np.isfinite(coarse_max) and change < tolerance,
                                    p=p, grid_M=coarse.n_theta))
        zbar_only = max(bpinhardy_ratio(ZZbarPoly.monomial(0, b), p, coarse)[0] for b in range(1, 6))
        result.rows.append(make_row(config, 'zbar-only', lhs=zbar_only, rhs=0.0, tolerance=1e-12,
                                    passed=zbar_only <= 1e-12, p=p))
        zbar_variant = max(bpinhardy_zbar_ratio(f, p, coarse) for f in corpus)
        result.rows.append(make_row(config, 'zbar-variant', lhs=zbar_variant,
                                    passed=bool(np.isfinite(zbar_variant)), p=p))


@experiment('p2-bound')
def run_p2_bound(config, access, result):
    for kernel_id, k in _kernels(config, 10):
        if k.is_zero():
            continue
        for q in config.q_values:
            check = hardy_extremal_bound_check(k, 2.0, q, None, config.degree_cap)
            ratio = check.lhs / check.rhs
            result.rows.append(make_row(config, kernel_id, lhs=check.lhs, rhs=check.rhs, ratio=ratio,
                                        tolerance=1e-6, passed=abs(ratio - 1) < 1e-6, p=2.0, q=q))


@experiment('szego-lower-bound')
def run_szego_lower_bound(config, access, result):
    p = config.p if config.p is not None else 4.0
    for kernel_id, F in _kernels(config, 10):
        if F.is_zero():
            continue
        for q in ([config.q] if config.q is not None else config.q_values):
            check = szego_lower_bound_check(F, p, q, access.for_exponent(p), config.grid_m)
            result.rows.append(make_row(config, kernel_id, lhs=check.lhs, rhs=check.rhs,
                                        ratio=check.ctilde, tolerance=1e-9, passed=check.ok, p=p, q=q))


@experiment('ctilde-continuity')
def run_ctilde_continuity(config, access, result):
    for q in config.q_values:
        for p in (1.9, 1.95, 2.0, 2.05, 2.1):
            value = access.ctilde(q, p)
            passed = value == 0.0 if p == 2 else bool(np.isfinite(value) and value > 0)
            result.rows.append(make_row(config, 'ledger', lhs=value,
                                        ratio=None if p == 2 else value / abs(p - 2),
                                        passed=passed, p=p, q=q))


def run_experiment(config: ExperimentConfig, ledger: Optional[ConstantsLedger] = None) -> ExperimentResult:
    """이름으로 실험을 찾아 실행합니다. 보고서 저장은 reports.write_reports 가 맡습니다."""
    if config.experiment not in EXPERIMENTS:
        raise ValueError(f"알 수 없는 실험: {config.experiment} (가능: {', '.join(sorted(EXPERIMENTS))})")
    access = LedgerAccess(config, ledger)
    result = ExperimentResult(config.experiment)
    logger.info(f"실험 시작: {config.experiment} (seed={config.seed})")
    EXPERIMENTS[config.experiment](config, access, result)
    result.ledger = access.snapshot()
    passed = sum(1 for row in result.rows if row['pass'] is not False)
    logger.info(f"실험 완료: {config.experiment}, {passed}/{len(result.rows)} 통과")
    return result
