"""The analytic (Riesz) projection on the circle and its contraction tests.

The projection kills negative Fourier frequencies and is exact on the
coefficient representation.  Contraction into the Hilbert-Bergman scale is
probed two ways: random trigonometric corpora for sufficiency and the
one-parameter boundary-singular test family for necessity, scanned on a grid
accumulating at the singular endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .funcspace import Polynomial, TrigPolynomial, riesz_test_function
from .norms import DEFAULT_QUAD, bergman2_coeff_norm, hardy_norm, mean_p

__all__ = [
    "ProjectionReport",
    "EpsilonScanResult",
    "HVProbeResult",
    "project",
    "analyze",
    "lp_circle_norm",
    "contraction_check",
    "chebyshev_eps_grid",
    "epsilon_scan",
    "random_trig_poly",
    "hv_bound_probe",
]


@dataclass(frozen=True)
class ProjectionReport:
    lhs: float
    rhs: float
    ratio: float
    params: dict


@dataclass(frozen=True)
class EpsilonScanResult:
    first_violation: float | None
    curve: list          # rows (eps, lhs, rhs, ratio)
    params: dict


@dataclass(frozen=True)
class HVProbeResult:
    q: float
    max_ratio: float
    bound: float
    trials: int
    refined_ratio: float | None = None


def project(F):
    """Keep the nonnegative-frequency part; exact on coefficients."""
    if not isinstance(F, TrigPolynomial):
        raise TypeError("project expects a TrigPolynomial")
    out = np.zeros(max(F.k_max + 1, 1), dtype=complex)
    for k in range(0, F.k_max + 1):
        out[k] = F.coefficient(k)
    return Polynomial(out)


def analyze(samples):
    """Discrete Fourier analysis of uniform circle samples.

    Returns the trigonometric polynomial with frequencies in
    [-N/2, N/2); alias-free when the sample count exceeds twice the true
    bandwidth.
    """
    samples = np.asarray(samples, dtype=complex)
    n = samples.size
    spec = np.fft.fft(samples) / n
    half = n // 2
    coeffs = np.concatenate([spec[half:], spec[:half]])
    return TrigPolynomial(coeffs, k_min=half - n)


def lp_circle_norm(F, p_prime, quad=DEFAULT_QUAD):
    """L^{p'}(T) norm by the angular doubling rule."""
    if p_prime < 1:
        raise ValueError("p_prime must be at least 1")
    return mean_p(F, 1.0, p_prime, quad)


def contraction_check(F, p, alpha, quad=DEFAULT_QUAD):
    """Compare ||P_+ F||_{A^2_alpha} against ||F||_{L^{p'}} with p' = p/(p-1)."""
    if p <= 2:
        raise ValueError("p must exceed 2")
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    p_prime = p / (p - 1.0)
    if isinstance(F, TrigPolynomial):
        plus = project(F)
    else:
        raise TypeError("contraction_check expects a TrigPolynomial")
    lhs = bergman2_coeff_norm(plus, alpha)
    rhs = lp_circle_norm(F, p_prime, quad).value
    return ProjectionReport(lhs, rhs, lhs / rhs if rhs > 0 else 0.0,
                            {"p": p, "p_prime": p_prime, "alpha": alpha})


def chebyshev_eps_grid(n=64):
    """n points in (0, 1) accumulating at 1; the interesting regime of the
    necessity scan is eps -> 1-."""
    j = np.arange(1, n + 1)
    return np.sin(np.pi * j / (2.0 * (n + 1)))


def epsilon_scan(p, alpha, eps_grid=None, quad=DEFAULT_QUAD):
    """Scan the test family for a violation of the A^2_alpha contraction.

    The projected side is the exact two-coefficient norm of
    (1 - gamma eps^2) - eps z; the right side is the quadrature L^{p'} norm
    of the sampled family.  Returns the first grid point with ratio > 1, or
    None when the scan stays contractive.
    """
    if p <= 2:
        raise ValueError("p must exceed 2")
    if eps_grid is None:
        eps_grid = chebyshev_eps_grid()
    p_prime = p / (p - 1.0)
    curve = []
    first = None
    for eps in np.asarray(eps_grid, dtype=float):
        sampler, plus = riesz_test_function(p_prime, eps)
        lhs = bergman2_coeff_norm(project(plus), alpha)
        rhs = lp_circle_norm(sampler, p_prime, quad).value
        ratio = lhs / rhs
        curve.append((float(eps), lhs, rhs, ratio))
        if first is None and ratio > 1.0:
            first = float(eps)
    return EpsilonScanResult(first, curve, {"p": p, "alpha": alpha})


def random_trig_poly(rng, max_freq=16, analytic=False):
    """Complex Gaussian coefficients on frequencies |k| <= max_freq, or on
    0 <= k <= max_freq when analytic."""
    lo = 0 if analytic else -max_freq
    n = max_freq - lo + 1
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return TrigPolynomial(c, k_min=lo)


def _hv_ratio(F, q, quad):
    num = hardy_norm(project(F), q, quad).value
    den = lp_circle_norm(F, q, quad).value
    return num / den if den > 0 else 0.0


def hv_bound_probe(q, trials=200, quad=DEFAULT_QUAD, seed=0, max_freq=16,
                   refine=False, analytic=False):
    """Maximum projection ratio ||P_+ G||_{H^q} / ||G||_{L^q} over a random
    corpus; always bounded by csc(pi/q).

    With ``refine`` the best corpus member (restricted to low frequencies)
    is pushed uphill by a derivative-free local search, which gets visibly
    closer to the sharp constant.
    """
    if q <= 1:
        raise ValueError("q must exceed 1")
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(trials):
        F = random_trig_poly(rng, max_freq, analytic=analytic)
        best = max(best, _hv_ratio(F, q, quad))
    refined = None
    if refine:
        refined = 0.0
        for s in range(4):
            F = _ratio_ascent(q, kf=64, seed=int(rng.integers(2 ** 31)))
            refined = max(refined, _hv_ratio(F, q, quad))
        best = max(best, refined)
    return HVProbeResult(q, best, 1.0 / math.sin(math.pi / q), trials, refined)


def _ratio_ascent(q, kf=64, seed=0, iters=3000, n_grid=2048):
    """Local ascent of the projection ratio over bandwidth-kf trig
    polynomials; the sharp constant is only approached as the bandwidth
    grows, so this is a lower-bound refinement, not an extremal claim."""
    rng = np.random.default_rng(seed)
    ks = np.arange(-kf, kf + 1)
    theta = 2.0 * np.pi * np.arange(n_grid) / n_grid
    E = np.exp(1j * np.outer(theta, ks))
    pos = ks >= 0
    c = rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)
    c /= np.linalg.norm(c)

    def val_grad(c):
        G = E @ c
        h = E[:, pos] @ c[pos]
        B = np.mean(np.abs(G) ** q)
        A = np.mean(np.abs(h) ** q)
        gB = q * np.mean((np.abs(G) ** (q - 2) * np.conj(G))[:, None] * E, axis=0)
        gA = np.zeros_like(c)
        gA[pos] = q * np.mean((np.abs(h) ** (q - 2) * np.conj(h))[:, None]
                              * E[:, pos], axis=0)
        return (np.log(A) - np.log(B)) / q, gA / A - gB / B

    v, g = val_grad(c)
    step = 0.1
    for _ in range(iters):
        d = np.conj(g)
        d -= np.real(np.vdot(c, d)) * c
        gn = np.linalg.norm(d)
        if gn < 1e-10:
            break
        t = step
        accepted = False
        while t > 1e-12:
            c2 = c + t * d
            c2 /= np.linalg.norm(c2)
            v2, g2 = val_grad(c2)
            if v2 > v + 1e-4 * t * gn * gn:
                c, v, g = c2, v2, g2
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        step = min(2.0 * t, 1.0)
    return TrigPolynomial(c, k_min=-kf)
