"""Unit tests for the coefficient-side and quadrature-side norms."""

import math

import numpy as np
import pytest

from contractlab.coeff import binom_coeffs
from contractlab.funcspace import (MultiPolynomial, Polynomial,
                                   TrigPolynomial, kernel_sampler)
from contractlab.norms import (QuadratureSpec, bergman2_coeff_norm,
                               bergman_norm, dirichlet_norm,
                               disk_gradient_integral, hardy_norm,
                               hardy_stein_residual, hardy_stein_sides,
                               mean_p)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(angular_nodes=100)
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_doublings=0)


def test_dirichlet_norm_univariate_and_product_weights():
    f = Polynomial([1.0, 2.0])
    beta = 3.0
    w = binom_coeffs(beta, 1)
    assert dirichlet_norm(f, beta) == pytest.approx(
        math.sqrt(w[0] + 4.0 * w[1]), rel=1e-14)
    g = MultiPolynomial(np.array([[1.0, 0.0], [0.0, 2.0]]))
    assert dirichlet_norm(g, beta) == pytest.approx(
        math.sqrt(1.0 + 4.0 * w[1] ** 2), rel=1e-14)
    with pytest.raises(ValueError):
        dirichlet_norm(f, 0.0)


def test_bergman2_coeff_norm_reduces_to_parseval_at_alpha_minus1():
    rng = np.random.default_rng(0)
    a = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    f = Polynomial(a)
    assert bergman2_coeff_norm(f, -1.0) == pytest.approx(
        float(np.linalg.norm(a)), rel=1e-14)


def test_monomial_bergman_norms():
    # ||z^n||_{A^2_alpha}^2 = 1 / c_{alpha+2}(n), both paths
    for n in (0, 1, 5, 20):
        f = Polynomial(np.eye(n + 1, dtype=complex)[n])
        for alpha in (0.0, 1.5):
            expect = 1.0 / math.sqrt(binom_coeffs(alpha + 2.0, n)[n])
            assert bergman2_coeff_norm(f, alpha) == pytest.approx(expect, rel=1e-13)
            assert bergman_norm(f, 2.0, alpha).value == pytest.approx(expect, rel=1e-10)


def test_hardy_norm_known_value_and_even_p_exactness():
    f = Polynomial([1.0, 1.0])
    assert hardy_norm(f, 4.0).value == pytest.approx(6.0 ** 0.25, rel=1e-12)
    # even p: |f|^p is a trig polynomial, so the rectangle rule is exact
    rng = np.random.default_rng(5)
    g = Polynomial(rng.standard_normal(6) + 1j * rng.standard_normal(6))
    power = np.array([1.0 + 0.0j])
    for _ in range(3):
        power = np.convolve(power, g.coeffs)
    exact = float(np.linalg.norm(power)) ** (1.0 / 3.0)
    assert hardy_norm(g, 6.0).value == pytest.approx(exact, rel=1e-12)


def test_mean_p_monotone_in_radius_and_degenerate_at_zero():
    f = Polynomial([0.3, -1.0, 0.5j])
    values = [mean_p(f, r, 3.0).value for r in (0.2, 0.5, 0.8, 1.0)]
    assert all(a < b for a, b in zip(values, values[1:]))
    rep = mean_p(f, 0.0, 3.0)
    assert rep.value == pytest.approx(0.3)
    assert rep.est_error == 0.0


def test_mean_p_trig_polynomial_boundary_only():
    F = TrigPolynomial([1.0, 0.5], k_min=-1)
    rep = mean_p(F, 1.0, 2.0)
    assert rep.value == pytest.approx(math.sqrt(1.25), rel=1e-13)
    with pytest.raises(ValueError):
        mean_p(F, 0.5, 2.0)


def test_bergman_norm_constant_normalization():
    for alpha in (-0.5, 0.0, 2.0):
        rep = bergman_norm(Polynomial([3.0]), 2.7, alpha)
        assert rep.value == pytest.approx(3.0, rel=1e-12)


def test_kernel_sampler_unit_bergman_norm():
    for zeta in (0.0, 0.5, 0.4 + 0.3j):
        f = kernel_sampler(4.0, 0.0, zeta)
        assert bergman_norm(f, 4.0, 0.0).value == pytest.approx(1.0, rel=1e-11)


def test_disk_gradient_integral_closed_form_p2():
    # p = 2: integral of |f'|^2 over the unit disk (normalized area) is
    # sum k |a_k|^2
    rng = np.random.default_rng(11)
    a = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    f = Polynomial(a)
    expect = float(np.sum(np.arange(6) * np.abs(a) ** 2))
    assert disk_gradient_integral(f, 2.0) == pytest.approx(expect, rel=1e-10)


def test_disk_gradient_integral_rejects_singular_case():
    f = Polynomial([-0.25, 1.0])  # zero at z = 1/4
    with pytest.raises(ValueError):
        disk_gradient_integral(f, 1.5)
    assert disk_gradient_integral(Polynomial([2.0]), 3.0) == 0.0


def test_hardy_stein_identity_small_cases():
    rng = np.random.default_rng(2)
    for p in (2.5, 4.0):
        f = Polynomial(rng.standard_normal(5) + 1j * rng.standard_normal(5))
        for r in (0.4, 0.9):
            lhs, rhs, converged = hardy_stein_sides(f, p, r)
            assert converged
            assert abs(lhs - rhs) / abs(lhs) < 1e-6
            assert hardy_stein_residual(f, p, r) == pytest.approx(abs(lhs - rhs))


def test_hardy_stein_flags_singular_subcase():
    f = Polynomial([-0.5, 1.0])  # interior zero, p < 2 blows up the area side
    lhs, rhs, converged = hardy_stein_sides(f, 1.5, 0.9)
    assert math.isnan(rhs) and not converged
    assert math.isfinite(lhs)


def test_norm_reports_carry_error_estimates():
    f = Polynomial([1.0, 0.7, -0.2])
    rep = hardy_norm(f, 3.1)
    assert rep.converged
    assert rep.est_error < 1e-11 * rep.value
    assert rep.nodes_used["angular"] >= 256
