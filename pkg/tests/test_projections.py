# tests/test_projections.py

import numpy as np
import pytest

from disc_core import BoundarySamples, TaylorPoly, ZZbarPoly
from projections import (
    bergman_project,
    bergman_project_exact,
    bergman_project_monomial,
    bergman_project_quadrature_monomial,
    fourier_coefficients,
    szego_coproject,
    szego_norm,
    szego_norm_check,
    szego_project,
    szego_samples,
    truncated_projection,
)
from utils import random_trig_corpus


def test_monomial_rule_examples():
    np.testing.assert_allclose(bergman_project_monomial(2, 1).coeffs, [0.0, 2 / 3])
    assert bergman_project_monomial(1, 2).is_zero()
    np.testing.assert_allclose(bergman_project_monomial(3, 0).coeffs, [0, 0, 0, 1])
    np.testing.assert_allclose(bergman_project_monomial(1, 1).coeffs, [0.5])
    with pytest.raises(ValueError):
        bergman_project_monomial(-1, 0)


def test_quadrature_matches_monomial_rule(small_grid):
    worst = 0.0
    for a in range(7):
        for b in range(7):
            closed = bergman_project_monomial(a, b).padded(a + 2)
            quadrature = bergman_project_quadrature_monomial(a, b, small_grid).padded(a + 2)
            worst = max(worst, float(np.max(np.abs(closed - quadrature))))
    assert worst < 1e-8


def test_projection_of_mixed_poly_matches_exact_rule(grid):
    f = ZZbarPoly.from_terms({(3, 1): 1.0 - 1j, (1, 1): 0.5, (0, 2): 2.0, (2, 0): 0.25j})
    exact = bergman_project_exact(f)
    quadrature = bergman_project(f, 4, grid)
    np.testing.assert_allclose(quadrature.padded(5), exact.padded(5), atol=1e-10)


def test_projection_fixes_analytic_polynomials(grid):
    f = TaylorPoly([1.0, -0.5, 0.25j])
    np.testing.assert_allclose(bergman_project(f, 5, grid).padded(6), f.padded(6), atol=1e-12)


def test_projection_rejects_degree_beyond_grid(small_grid):
    with pytest.raises(ValueError):
        bergman_project(TaylorPoly([1.0]), small_grid.max_projection_degree + 1, small_grid)


def test_projection_rejects_mismatched_values(small_grid):
    with pytest.raises(ValueError):
        bergman_project(np.ones(5), 2, small_grid)


def test_szego_projection_of_cosine():
    k = BoundarySamples.from_function(lambda t: 2 * np.cos(t), 32)
    np.testing.assert_allclose(szego_project(k).padded(2), [0.0, 1.0], atol=1e-14)
    assert szego_project(k).degree == 1


def test_szego_split_reconstructs_samples():
    k = BoundarySamples.from_fourier({-3: 1.0, 0: 0.5j, 2: -2.0}, 32)
    np.testing.assert_allclose((szego_samples(k) + szego_coproject(k)).values, k.values, atol=1e-13)
    assert fourier_coefficients(szego_coproject(k))[-3] == pytest.approx(1.0)
    assert abs(fourier_coefficients(szego_coproject(k))[0]) < 1e-14


def test_fourier_coefficients_to_samples():
    k = BoundarySamples.from_fourier({-2: 1.0, 1: 0.5}, 16)
    coefficients = fourier_coefficients(k)
    assert coefficients[-2] == pytest.approx(1.0)
    assert coefficients[20] == 0
    np.testing.assert_allclose(coefficients.to_samples(16).values, k.values, atol=1e-14)


def test_truncated_projection():
    k = BoundarySamples.from_poly(TaylorPoly([1.0, 2.0, 3.0]), 16)
    np.testing.assert_allclose(truncated_projection(k, 1).coeffs, [1.0, 2.0], atol=1e-14)
    with pytest.raises(ValueError):
        truncated_projection(k, 8)


def test_szego_norm_values():
    assert szego_norm(2.0) == 1.0
    assert szego_norm(4.0) == pytest.approx(np.sqrt(2))
    assert szego_norm(4 / 3) == pytest.approx(np.sqrt(2))
    with pytest.raises(ValueError):
        szego_norm(1.0)


@pytest.mark.parametrize('p', [4 / 3, 2.0, 4.0])
def test_szego_norm_check_on_trig_corpus(p):
    corpus = [BoundarySamples.from_fourier(c, 64) for c in random_trig_corpus(7, 30, 8)]
    max_ratio, bound, ok = szego_norm_check(corpus, p)
    assert ok
    assert max_ratio <= bound + 1e-8
