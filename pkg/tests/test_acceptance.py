"""Acceptance gate: one test per numbered criterion, each printing a single
PASS/FAIL line with the measured quantity next to its tolerance.

The random corpora are seeded, so every number below is reproducible; frozen
regression values (the first violating point of the necessity scan, the
refinement threshold of the projection-ratio ascent) were established by
pre-build scans and are asserted as constants.
"""

import json
import math

import mpmath
import numpy as np
import pytest

from contractlab.cli import main as cli_main
from contractlab.coeff import binom_coeffs, ratio_Ak_seq, zeta_power_coeffs
from contractlab.dirichlet import DirichletPolynomial, helson_check, verify_coro_dirichlet
from contractlab.extremal import (OptimizerConfig, estimate_cpn,
                                  key_property_chain, random_unit_polynomial,
                                  verify_kulikov)
from contractlab.funcspace import Polynomial, kernel_sampler
from contractlab.norms import (bergman2_coeff_norm, bergman_norm, hardy_norm,
                               hardy_stein_sides)
from contractlab.riesz import (contraction_check, epsilon_scan,
                               hv_bound_probe, random_trig_poly)

SEED = 20260824

# first violating point of the necessity scan on the default 64-point grid,
# identical for (p, alpha) = (4, -0.5) and (4, -0.9): the deficit is
# first-order in eps^2 whenever alpha < p/2 - 2, so the scan trips at its
# smallest point sin(pi/130)
FROZEN_EPS_CROSSING = 0.024163745236132288


def _verdict(num, name, ok, detail):
    print(f"criterion {num:02d} [{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"criterion {num}: {name}: {detail}"


def test_criterion_01_inclusion_constant_is_one():
    opt_seed = 0
    worst_value, worst_dist = 0.0, 0.0
    for p in (2.5, 3.0, 4.0, 6.0):
        for n in range(1, 9):
            opt = OptimizerConfig(restarts=6, max_iter=2000, seed=opt_seed)
            res = estimate_cpn(p, n, opt)
            target = np.zeros(n + 1, dtype=complex)
            target[0] = 1.0
            dist = float(np.linalg.norm(res.best_poly.coeffs - target))
            worst_value = max(worst_value, res.best_value)
            worst_dist = max(worst_dist, dist)
            opt_seed += 1
    ok = worst_value <= 1.0 + 1e-6 and worst_dist <= 1e-3
    _verdict(1, "restricted inclusion constant",
             ok, f"max value {worst_value:.12f} (<= 1 + 1e-6), "
                 f"max coefficient distance {worst_dist:.2e} (<= 1e-3)")


def test_criterion_02_strict_inequality_on_random_corpus():
    rng = np.random.default_rng(SEED)
    violations = 0
    margin_floor = math.inf
    for i in range(10000):
        p = (2.5, 3.0, 4.0, 6.0)[i % 4]
        deg = int(rng.integers(1, 9))
        q = random_unit_polynomial(rng, deg, p)
        rep = hardy_norm(q, p)
        if rep.value > 1.0 + rep.est_error:
            violations += 1
        margin_floor = min(margin_floor, 1.0 - rep.value)
    ok = violations == 0
    _verdict(2, "strictness on 10^4 normalized nonconstant polynomials",
             ok, f"{violations} violations, margin floor {margin_floor:.3e} "
                 f"(logged, not asserted)")


def test_criterion_03_bergman_contraction_and_kernel_equality():
    rng = np.random.default_rng(SEED + 1)
    tuples = ((2.0, -1.0, 4.0, 0.0), (2.0, -1.0, 6.0, 1.0), (3.0, -1.0, 6.0, 0.0))
    failures = 0
    for i in range(1000):
        p, alpha, q, beta = tuples[i % 3]
        deg = int(rng.integers(1, 9))
        f = Polynomial(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        if not verify_kulikov(f, p, q, alpha, beta).ok:
            failures += 1
    worst_gap = 0.0
    for zeta in (0.0, 0.4, 0.4 + 0.3j, 0.9):
        rep = verify_kulikov(kernel_sampler(2.0, -1.0, zeta), 2.0, 4.0, -1.0, 0.0)
        worst_gap = max(worst_gap, abs(rep.lhs - rep.rhs))
    ok = failures == 0 and worst_gap < 1e-7
    _verdict(3, "Bergman contraction + kernel equality",
             ok, f"{failures}/1000 failures, kernel |lhs - rhs| max "
                 f"{worst_gap:.2e} (< 1e-7)")


def test_criterion_04_radial_derivative_identity():
    rng = np.random.default_rng(SEED + 2)
    grid = [(p, r) for p in (2.5, 3.0, 4.0) for r in (0.3, 0.7, 0.95)]
    worst = 0.0
    for i in range(100):
        deg = int(rng.integers(1, 9))
        f = Polynomial(rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        p, r = grid[i % len(grid)]
        lhs, rhs, converged = hardy_stein_sides(f, p, r)
        assert converged
        worst = max(worst, abs(lhs - rhs) / abs(lhs))
    ok = worst < 1e-6
    _verdict(4, "radial-derivative identity on 100 random polynomials",
             ok, f"worst relative residual {worst:.2e} (< 1e-6)")


def test_criterion_05_coefficient_identities():
    n = np.arange(0, 10001)
    exact = (np.array_equal(binom_coeffs(2.0, 10000), n + 1.0)
             and np.array_equal(binom_coeffs(1.0, 10000), np.ones(10001)))

    rng = np.random.default_rng(SEED + 3)
    mpmath.mp.dps = 40
    worst_gamma = 0.0
    for _ in range(1000):
        beta = float(rng.uniform(1e-3, 50.0))
        m = int(rng.integers(1, 10001))
        rec = binom_coeffs(beta, m)[m]
        # keep the argument m + beta in extended precision; forming it as a
        # double would perturb Gamma by ~psi(m) * ulp(m), above 1e-12
        arg = mpmath.mpf(beta) + m
        oracle = float(mpmath.gamma(arg) / (mpmath.gamma(beta)
                                            * mpmath.factorial(m)))
        worst_gamma = max(worst_gamma, abs(rec / oracle - 1.0))

    mono_ok = True
    ineq_worst = 0.0
    for p in (2.1, 2.5, 3.0, 4.0, 10.0, 50.0):
        A = ratio_Ak_seq(p, 1000)
        mono_ok = mono_ok and bool(np.all(A[1:] > A[:-1]))
        k = np.arange(1, 1001, dtype=float)
        lhs = (p / 2.0) * k / binom_coeffs(2.0 / p + 1.0, 999)
        rhs = binom_coeffs(p / 2.0, 1000)[1:]
        ineq_worst = max(ineq_worst, float(np.max((lhs - rhs) / rhs)))

    d2 = zeta_power_coeffs(2.0, 10000).values
    counts = np.zeros(10001)
    for i in range(1, 10001):
        counts[i::i] += 1
    divisors_exact = bool(np.array_equal(d2, counts[1:]))

    ok = (exact and worst_gamma < 1e-12 and mono_ok
          and ineq_worst <= 1e-12 and divisors_exact)
    _verdict(5, "coefficient identities",
             ok, f"c_1/c_2 exact {exact}, gamma-ratio worst {worst_gamma:.2e} "
                 f"(< 1e-12), A_k monotone {mono_ok}, weight inequality excess "
                 f"{ineq_worst:.2e} (<= 1e-12), d_2 exact {divisors_exact}")


def test_criterion_06_known_norm_values():
    err1 = abs(hardy_norm(Polynomial([1.0, 1.0]), 4.0).value - 6.0 ** 0.25)
    worst_mono = 0.0
    for m in range(0, 51):
        z_m = Polynomial(np.eye(m + 1, dtype=complex)[m])
        expect = 1.0 / math.sqrt(m + 1.0)
        worst_mono = max(worst_mono,
                         abs(bergman2_coeff_norm(z_m, 0.0) - expect),
                         abs(bergman_norm(z_m, 2.0, 0.0).value - expect))
    ok = err1 < 1e-10 and worst_mono < 1e-10
    _verdict(6, "known norm values",
             ok, f"|1+z| in H^4 error {err1:.2e}, monomial A^2 error "
                 f"{worst_mono:.2e} (both < 1e-10)")


def test_criterion_07_key_property_chain():
    rng = np.random.default_rng(SEED + 4)
    violations = 0
    worst_identity = 0.0
    for i in range(1000):
        p = (2.5, 3.0, 4.0)[i % 3]
        deg = int(rng.integers(1, 7))
        q = random_unit_polynomial(rng, deg, p)
        rep = key_property_chain(q, p)
        if not rep.ok:
            violations += 1
        worst_identity = max(worst_identity, rep.identity_error)
    ok = violations == 0 and worst_identity < 1e-10
    _verdict(7, "three-step bound on the gradient integral",
             ok, f"{violations}/1000 chain violations, identity error "
                 f"{worst_identity:.2e} (< 1e-10)")


def test_criterion_08_projection_contraction_and_necessity():
    rng = np.random.default_rng(SEED + 5)
    worst_ratio = 0.0
    for i in range(1000):
        p, alpha = ((4.0, 0.0), (3.0, -0.5))[i % 2]
        F = random_trig_poly(rng)
        worst_ratio = max(worst_ratio, contraction_check(F, p, alpha).ratio)
    crossings = {}
    for alpha in (-0.5, -0.9):
        crossings[alpha] = epsilon_scan(4.0, alpha).first_violation
    ok = (worst_ratio <= 1.0 + 1e-8
          and all(c == pytest.approx(FROZEN_EPS_CROSSING, abs=1e-15)
                  for c in crossings.values()))
    _verdict(8, "projection contraction sufficiency + necessity scan",
             ok, f"max corpus ratio {worst_ratio:.12f} (<= 1 + 1e-8), "
                 f"crossings {crossings} (frozen {FROZEN_EPS_CROSSING})")


def test_criterion_09_sharp_projection_bound():
    worst_excess = -math.inf
    for i, q in enumerate((4.0 / 3.0, 2.0, 3.0, 4.0)):
        rep = hv_bound_probe(q, trials=250, seed=SEED + 6 + i)
        worst_excess = max(worst_excess, rep.max_ratio - rep.bound)
    rep2 = hv_bound_probe(2.0, trials=100, seed=SEED + 10, analytic=True)
    attained = abs(rep2.max_ratio - 1.0)
    ok = worst_excess <= 1e-9 and attained < 1e-12
    _verdict(9, "sharp projection norm bound",
             ok, f"max excess over csc(pi/q) {worst_excess:.2e} (<= 1e-9), "
                 f"q=2 analytic ratio |1 - max| {attained:.2e} (< 1e-12)")


def test_criterion_10_dirichlet_polynomials_desk_scale():
    rng = np.random.default_rng(SEED + 7)
    failures = 0
    for i in range(500):
        m = int(rng.integers(2, 5))
        f = DirichletPolynomial(rng.standard_normal(m) + 1j * rng.standard_normal(m))
        p = (2.5, 4.0)[i % 2]
        if not verify_coro_dirichlet(f, p).ok:
            failures += 1
        if not helson_check(f).ok:
            failures += 1
    red = verify_coro_dirichlet(DirichletPolynomial([1.0, 1.0]), 4.0)
    red_err = max(abs(red.lhs - 6.0 ** 0.25), abs(red.rhs - math.sqrt(3.0)))
    ok = failures == 0 and red_err < 1e-8
    _verdict(10, "Dirichlet polynomial contractions",
             ok, f"{failures}/1000 failures over 500 polynomials, reduction "
                 f"case error {red_err:.2e} (< 1e-8)")


def test_criterion_11_deterministic_reports(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        code = cli_main(["all", "--seed", "42", "--out", str(out)])
        assert code == 0
        rep = json.loads(out.read_text())
        rep.pop("timestamp")
        outs.append(json.dumps(rep, sort_keys=True))
    ok = outs[0] == outs[1]
    _verdict(11, "byte-identical reports modulo timestamp",
             ok, f"identical={ok} over two seeded full runs")
