# tests/test_extremal.py

import numpy as np
import pytest

from disc_core import TaylorPoly, integral_mean
from extremal import (
    BergmanSpace,
    HardySpace,
    holder_bound,
    make_space,
    optimality_residual_bergman,
    optimality_residual_hardy,
    ryabykh_profile,
    solve_bergman_extremal,
    solve_extremal,
    solve_hardy_extremal,
)
from utils import random_coefficient_corpus


def test_bergman_constant_kernel(grid):
    solution = solve_bergman_extremal(TaylorPoly([1.0]), 4.0, N=4, grid=grid)
    assert solution.converged
    assert solution.lam == pytest.approx(1.0)
    np.testing.assert_allclose(solution.F.padded(5), [1, 0, 0, 0, 0], atol=1e-8)


def test_bergman_z_hilbert_case(grid):
    solution = solve_bergman_extremal(TaylorPoly.monomial(1), 2.0, N=6, grid=grid)
    assert solution.lam == pytest.approx(1 / np.sqrt(2), rel=1e-10)
    np.testing.assert_allclose(solution.F.padded(7)[:2], [0, np.sqrt(2)], atol=1e-8)


def test_bergman_z_at_p4(grid):
    solution = solve_bergman_extremal(TaylorPoly.monomial(1), 4.0, N=6, grid=grid, tol=1e-8)
    assert solution.converged
    assert solution.lam == pytest.approx(3 ** 0.25 / 2, rel=1e-6)
    assert abs(solution.F.coeffs[1]) == pytest.approx(3 ** 0.25, rel=1e-6)
    assert optimality_residual_bergman(solution.F, TaylorPoly.monomial(1), solution.lam, 4.0, grid) < 1e-6


def test_bergman_residual_identity_at_p2(grid):
    F = TaylorPoly.monomial(1, np.sqrt(2))
    assert optimality_residual_bergman(F, TaylorPoly.monomial(1), 1 / np.sqrt(2), 2.0, grid) < 1e-12


def test_hardy_constant_and_z():
    constant = solve_hardy_extremal(TaylorPoly([1.0]), 3.0, N=4)
    assert constant.lam == pytest.approx(1.0)
    z = solve_hardy_extremal(TaylorPoly.monomial(1), 4.0, N=6)
    assert z.lam == pytest.approx(1.0, rel=1e-8)
    np.testing.assert_allclose(np.abs(z.F.padded(7)), [0, 1, 0, 0, 0, 0, 0], atol=1e-6)


def test_hardy_residual_of_exact_solution():
    assert optimality_residual_hardy(TaylorPoly.monomial(1), TaylorPoly.monomial(1), 1.0, 4.0) < 1e-12


def test_hardy_hilbert_case_for_random_kernels():
    for coeffs in random_coefficient_corpus(5, 5, 6):
        k = TaylorPoly(coeffs)
        norm = np.sqrt(np.sum(np.abs(k.coeffs) ** 2))
        solution = solve_hardy_extremal(k, 2.0, N=10)
        assert solution.lam == pytest.approx(norm, rel=1e-10)
        np.testing.assert_allclose(solution.F.padded(11)[:len(k.coeffs)], k.coeffs / norm, atol=1e-8)
        assert optimality_residual_hardy(solution.F, k, solution.lam, 2.0) < 1e-8


def test_hardy_solver_for_one_plus_half_z():
    k = TaylorPoly([1.0, 0.5])
    solution = solve_hardy_extremal(k, 4.0, N=16, tol=1e-8)
    assert solution.converged
    assert optimality_residual_hardy(solution.F, k, solution.lam, 4.0) < 1e-3
    space = HardySpace(4.0, 16)
    assert space.norm(solution.F) == pytest.approx(1.0, abs=1e-8)
    # λ 는 쌍대 노름 이하, 실행 가능한 시험 함수의 쌍 값 이상
    assert solution.lam <= holder_bound(k, 4.0, 'hardy') + 1e-8
    assert solution.lam >= space.pairing(space.normalize(k), k) - 1e-8
    assert solution.diagnostics['residual_history'][-1] == solution.residual


def test_phase_invariance():
    k = TaylorPoly([1.0, 0.5])
    base = solve_hardy_extremal(k, 4.0, N=12, tol=1e-9)
    rotated = solve_hardy_extremal(k.scaled(np.exp(0.8j)), 4.0, N=12, tol=1e-9)
    assert rotated.lam == pytest.approx(base.lam, rel=1e-7)


def test_uniqueness_from_random_starts():
    k = TaylorPoly([1.0, 0.5])
    first = solve_hardy_extremal(k, 4.0, N=8, tol=1e-9, seed=1)
    second = solve_hardy_extremal(k, 4.0, N=8, tol=1e-9, seed=2)
    assert first.converged and second.converged
    np.testing.assert_allclose(first.F.padded(9), second.F.padded(9), atol=1e-5)


def test_solver_rejects_bad_input(grid):
    with pytest.raises(ValueError):
        solve_hardy_extremal(TaylorPoly([0.0]), 4.0, N=4)
    with pytest.raises(ValueError):
        solve_hardy_extremal(TaylorPoly([1.0]), 1.0, N=4)
    with pytest.raises(ValueError):
        BergmanSpace(4.0, grid.max_projection_degree + 1, grid)
    with pytest.raises(ValueError):
        make_space('szego', 4.0, 4)


def test_ryabykh_profile_closed_forms(grid):
    constant = ryabykh_profile(TaylorPoly([1.0]), 4.0, 2.0, N=4, grid=grid)
    np.testing.assert_allclose(constant.extremal_means, 1.0, atol=1e-8)

    z = ryabykh_profile(TaylorPoly.monomial(1), 2.0, 4.0, 'bergman', N=4, grid=grid)
    np.testing.assert_allclose(z.extremal_means, np.sqrt(2) * np.array(z.radii), rtol=1e-8)
    kernel_means = [integral_mean(TaylorPoly.monomial(1), r, 4.0) for r in z.radii]
    np.testing.assert_allclose(z.kernel_means, kernel_means)


def test_ryabykh_profile_is_nondecreasing():
    profile = ryabykh_profile(TaylorPoly([1.0, 0.5]), 4.0, 4 / 3, 'hardy', N=12, tol=1e-8)
    means = np.array(profile.extremal_means)
    assert np.all(np.diff(means) >= -1e-12)
    assert np.all(np.isfinite(means))
    assert len(profile.rows()) == 4


@pytest.mark.parametrize('space_name', ['hardy', 'bergman'])
def test_residual_never_increases_on_corpus(grid, space_name):
    for coeffs in random_coefficient_corpus(13, 4, 4):
        k = TaylorPoly(coeffs)
        space = make_space(space_name, 4.0, k.degree + 8, grid)
        solution = solve_extremal(space, k, tol=1e-6)
        history = np.array(solution.diagnostics['residual_history'])
        assert solution.converged
        assert solution.diagnostics['monotone_residual']
        assert np.all(np.diff(history) <= 0)
        assert history[-1] == solution.residual


def test_residual_grows_with_perturbation():
    space = HardySpace(4.0, 8)
    z = TaylorPoly.monomial(1)
    rng = np.random.default_rng(21)
    u = TaylorPoly(rng.standard_normal(9) + 1j * rng.standard_normal(9))
    residuals = []
    for eps in [1e-4, 1e-3, 1e-2]:
        F = space.normalize(z + u.scaled(eps))
        lam = space.pairing(F, z)
        residuals.append(optimality_residual_hardy(F, z, lam, 4.0, N=8))
    assert residuals[0] > 0
    assert residuals[0] < residuals[1] < residuals[2]
