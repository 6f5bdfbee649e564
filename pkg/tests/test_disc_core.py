# tests/test_disc_core.py

import numpy as np
import pytest

from disc_core import (
    BoundarySamples,
    TaylorPoly,
    ZZbarPoly,
    bergman_norm,
    check_isoperimetric,
    default_grid_size,
    evaluate,
    hardy_norm,
    integral_mean,
    lift_values,
    lp_disc_norm,
    make_polar_grid,
    nonlinear_lift,
)
from utils import random_coefficient_corpus

MONOTONE_RADII = np.linspace(0.0, 1.0, 50)
CORPUS = [TaylorPoly(c) for c in random_coefficient_corpus(7, 100)]


def test_default_grid_size_is_power_of_two():
    assert default_grid_size(0) == 16
    assert default_grid_size(4) == 32
    assert default_grid_size(16) == 128


def test_taylor_poly_basics():
    f = TaylorPoly([1.0, 2.0, 0.0, 3.0])
    assert f.degree == 3
    assert evaluate(f, 2.0) == pytest.approx(1 + 4 + 24)
    np.testing.assert_allclose(f.derivative().coeffs, [2.0, 0.0, 9.0])
    np.testing.assert_allclose(f.times_z().divide_by_z().coeffs, f.coeffs)
    assert TaylorPoly([0.0]).is_zero()


def test_divide_by_z_rejects_nonzero_constant():
    with pytest.raises(ValueError):
        TaylorPoly([1.0, 1.0]).divide_by_z()


def test_rotated_matches_composition():
    f = TaylorPoly([0.5, 1.0 - 1j, 0.25])
    z = 0.3 + 0.4j
    assert f.rotated(0.7)(z) == pytest.approx(f(np.exp(0.7j) * z))


def test_boundary_samples_validation():
    with pytest.raises(ValueError):
        BoundarySamples(np.ones(12))
    with pytest.raises(ValueError):
        BoundarySamples.from_poly(TaylorPoly.monomial(8), 16)


def test_boundary_samples_coefficients_recover_poly():
    f = TaylorPoly([1.0, -2.0j, 0.5])
    samples = BoundarySamples.from_poly(f, 16)
    np.testing.assert_allclose(samples.coefficients()[:3], f.coeffs, atol=1e-14)
    np.testing.assert_allclose(samples.coefficients()[3:], 0, atol=1e-14)


def test_integral_means_of_monomials():
    z = TaylorPoly.monomial(1)
    assert integral_mean(z, 0.5, 2.0) == pytest.approx(0.5)
    assert hardy_norm(z, 4.0).norm_estimate == pytest.approx(1.0)
    assert hardy_norm(TaylorPoly([1.0, 1.0]), 2.0).norm_estimate == pytest.approx(np.sqrt(2))


def test_integral_mean_rejects_nonpositive_exponent():
    with pytest.raises(ValueError):
        integral_mean(TaylorPoly([1.0]), 0.5, 0.0)


def test_bergman_norms_of_z(grid):
    z = TaylorPoly.monomial(1)
    assert bergman_norm(z, 2.0, grid) == pytest.approx(np.sqrt(0.5), rel=1e-12)
    assert bergman_norm(z, 4.0, grid) == pytest.approx((1 / 3) ** 0.25, rel=1e-12)


def test_polar_grid_area_normalization(grid):
    assert lp_disc_norm(np.ones(grid.points.shape), 2.0, grid) == pytest.approx(1.0)
    quarter = make_polar_grid(radius=0.25)
    assert quarter.integrate(np.ones(quarter.points.shape)).real == pytest.approx(1 / 16)


@pytest.mark.parametrize('m', [0, 1, 3, 8])
def test_log_weight_moments(grid, m):
    # ∫ r^{2m} log(1/r) dA/π = 2/(2m+2)²
    values = np.abs(grid.points) ** (2 * m) * np.log(1.0 / np.abs(grid.points))
    assert grid.integrate(values).real == pytest.approx(2.0 / (2 * m + 2) ** 2, rel=1e-6)


def test_lift_values_zero_nodes():
    np.testing.assert_allclose(lift_values([0.0, 2.0], 4.0), [0.0, 8.0])


def test_nonlinear_lift_on_boundary():
    z = TaylorPoly.monomial(1)
    lifted = nonlinear_lift(z, 4.0, 16)
    np.testing.assert_allclose(lifted.values, np.exp(1j * lifted.thetas), atol=1e-14)
    F = TaylorPoly([1.0, 0.5])
    np.testing.assert_allclose(nonlinear_lift(F, 2.0, 16).values, BoundarySamples.from_poly(F, 16).values)


def test_nonlinear_lift_on_grid(grid):
    F = TaylorPoly([1.0, 0.5])
    values = grid.evaluate(F)
    np.testing.assert_allclose(nonlinear_lift(F, 3.0, grid), np.abs(values) * values)


def test_nonlinear_lift_rejects_small_exponent():
    with pytest.raises(ValueError):
        nonlinear_lift(TaylorPoly([1.0]), 1.0, 16)


def test_isoperimetric_inequality(grid):
    a_norm, h_norm, ok = check_isoperimetric(TaylorPoly([0.3, 1.0, -0.5j]), 2.0, grid)
    assert ok
    assert a_norm < h_norm
    with pytest.raises(ValueError):
        check_isoperimetric(TaylorPoly([1.0]), 0.5, grid)


def test_zzbar_poly_derivatives():
    f = ZZbarPoly.from_terms({(2, 1): 1.0, (0, 1): 2.0})
    z = 0.3 - 0.2j
    assert f(z) == pytest.approx(z ** 2 * np.conj(z) + 2 * np.conj(z))
    assert f.dz()(z) == pytest.approx(2 * z * np.conj(z))
    assert f.dzbar()(z) == pytest.approx(z ** 2 + 2)
    assert f.times_zbar()(z) == pytest.approx(f(z) * np.conj(z))
    assert f.total_degree() == 3


def test_zzbar_from_taylor_agrees():
    F = TaylorPoly([1.0, 2.0, 3.0])
    z = np.array([0.1, 0.5j, -0.7])
    np.testing.assert_allclose(ZZbarPoly.from_taylor(F)(z), F(z))


def test_integral_mean_of_one_plus_z_at_p4():
    f = TaylorPoly([1.0, 1.0])
    assert integral_mean(f, 1.0, 4.0) == pytest.approx(6 ** 0.25, rel=1e-12)
    assert hardy_norm(f, 4.0).norm_estimate == pytest.approx(6 ** 0.25, rel=1e-12)


@pytest.mark.parametrize('p', [1.0, 4 / 3, 2.0, 4.0])
def test_integral_means_are_nondecreasing_in_r(p):
    for f in CORPUS[:10]:
        means = np.array([integral_mean(f, r, p, 1024) for r in MONOTONE_RADII])
        assert np.all(np.diff(means) >= -1e-10)


def test_hardy_norm_at_p2_matches_parseval():
    for f in CORPUS[:20]:
        expected = np.sqrt(np.sum(np.abs(f.coeffs) ** 2))
        assert hardy_norm(f, 2.0).norm_estimate == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize('p', [4 / 3, 3.0, 4.0])
def test_lift_modulus_is_power_of_modulus(grid, p):
    F = TaylorPoly([0.4, -1.0j, 0.3, 0.2 + 0.1j])
    boundary = BoundarySamples.from_poly(F, 64)
    np.testing.assert_allclose(np.abs(nonlinear_lift(F, p, boundary).values),
                               np.abs(boundary.values) ** (p - 1), rtol=1e-12)
    np.testing.assert_allclose(np.abs(nonlinear_lift(F, p, grid)),
                               np.abs(grid.evaluate(F)) ** (p - 1), rtol=1e-12)


def test_bergman_norm_of_monomials_at_p2(grid):
    for n in range(11):
        assert bergman_norm(TaylorPoly.monomial(n), 2.0, grid) ** 2 == pytest.approx(1 / (n + 1), rel=1e-12)


@pytest.mark.parametrize('p', [1.0, 2.0, 4.0])
def test_isoperimetric_inequality_on_corpus(grid, p):
    for h in CORPUS:
        _, _, ok = check_isoperimetric(h, p, grid, 1024)
        assert ok
