"""Extremal search and inequality verifiers.

The restricted inclusion constant for polynomials of degree n is estimated by
multi-restart projected gradient ascent of the H^p norm over the ellipsoid of
unit weighted-Dirichlet norm.  Rescaling the coefficients by the square roots
of the weights maps the ellipsoid to the Euclidean unit sphere, where tangent
projection and retraction by normalization are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coeff import binom_coeffs
from .funcspace import Polynomial
from .norms import (DEFAULT_QUAD, bergman2_coeff_norm, bergman_norm,
                    disk_gradient_integral, hardy_norm)

__all__ = [
    "OptimizerConfig",
    "ExtremalResult",
    "InclusionVerdict",
    "KulikovReport",
    "KeyChainReport",
    "estimate_cpn",
    "hp_power_and_gradient",
    "gauge_fix",
    "random_unit_polynomial",
    "verify_kulikov",
    "key_property_chain",
    "contractive_inclusion_gate",
]


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_iter: int = 5000
    grad_tol: float = 1e-8
    angular_nodes: int = 512
    seed: int = 0


@dataclass(frozen=True)
class ExtremalResult:
    best_value: float
    best_poly: Polynomial
    restarts: int
    converged_restarts: int
    gradient_norm_at_best: float
    restart_log: list = field(default_factory=list)


@dataclass(frozen=True)
class InclusionVerdict:
    contractive: bool
    reason: str
    params: dict


@dataclass(frozen=True)
class KulikovReport:
    lhs: float
    rhs: float
    est_error: float
    ok: bool
    params: dict


@dataclass(frozen=True)
class KeyChainReport:
    gradient_integral: float       # int |q'|^2 |q|^{p-2} dA
    hoelder_bound: float
    kulikov_bound: float
    coeff_sum: float               # sum k^2 |a_k|^2 / c_{2/p+1}(k-1)
    identity_error: float
    ok: bool


def _phase_circle_matrix(n_coeffs, n_theta):
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    return np.exp(1j * np.outer(theta, np.arange(n_coeffs)))


def hp_power_and_gradient(a, p, E):
    """Discrete mean of |q|^p on the angular grid and its gradient with
    respect to the real and imaginary parts of the Taylor coefficients.

    Returns (value, complex gradient g) where the real gradient pair for
    coefficient k is (Re g_k, -Im g_k).
    """
    qv = E @ a
    absq = np.abs(qv)
    val = float(np.mean(absq ** p))
    w = absq ** (p - 2.0) * np.conj(qv)
    g = (p / E.shape[0]) * (E.T @ w)
    return val, g


def _objective(b, sqrt_c, p, E):
    m = sqrt_c.size
    a = (b[:m] + 1j * b[m:]) / sqrt_c
    val, g = hp_power_and_gradient(a, p, E)
    grad = np.concatenate([np.real(g) / sqrt_c, -np.imag(g) / sqrt_c])
    return val, grad


def _ascend(b0, sqrt_c, p, E, max_iter, grad_tol):
    b = b0 / np.linalg.norm(b0)
    val, grad = _objective(b, sqrt_c, p, E)
    gn = 0.0
    converged = False
    it = 0
    step = 1.0
    for it in range(1, max_iter + 1):
        tangent = grad - (grad @ b) * b
        gn = np.linalg.norm(tangent)
        if gn < grad_tol:
            converged = True
            break
        t = step
        accepted = False
        while t > 1e-14:
            cand = b + t * tangent
            cand /= np.linalg.norm(cand)
            v2, g2 = _objective(cand, sqrt_c, p, E)
            if v2 >= val + 1e-4 * t * gn * gn:
                b, val, grad = cand, v2, g2
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        step = min(2.0 * t, 4.0)
    return b, val, gn, converged, it


def gauge_fix(poly):
    """Remove the global phase: rotate so the leading nonzero coefficient
    (preferring a_0) is real and nonnegative."""
    c = poly.coeffs.copy()
    pivot = c[0]
    if abs(pivot) < 1e-14:
        pivot = c[np.argmax(np.abs(c))]
    if abs(pivot) > 0:
        c = c * (np.conj(pivot) / abs(pivot))
        c[np.abs(np.imag(c)) < 1e-30] = np.real(c[np.abs(np.imag(c)) < 1e-30])
    return Polynomial(c)


def random_unit_polynomial(rng, degree, p):
    """Random polynomial of exact unit weighted-Dirichlet norm (beta = p/2)."""
    m = degree + 1
    b = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    b /= np.linalg.norm(b)
    sqrt_c = np.sqrt(binom_coeffs(p / 2.0, degree, require_positive=True))
    return Polynomial(b / sqrt_c)


def estimate_cpn(p, n, opt=OptimizerConfig(), quad=DEFAULT_QUAD):
    """Estimate the degree-n restricted inclusion constant by multi-restart
    projected gradient ascent on the unit sphere.

    The restart set always contains the constant 1 and a near-kernel profile;
    the remaining starts are uniform on the sphere.  The reported value is
    the adaptive-quadrature H^p norm of the best candidate, a lower bound on
    the true supremum.
    """
    if p <= 2:
        raise ValueError("p must exceed 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = n + 1
    sqrt_c = np.sqrt(binom_coeffs(p / 2.0, n, require_positive=True))
    n_theta = max(opt.angular_nodes, 1 << (int(p * n) + 2).bit_length())
    E = _phase_circle_matrix(m, n_theta)
    rng = np.random.default_rng(opt.seed)

    starts = []
    const = np.zeros(2 * m)
    const[0] = 1.0
    starts.append(const)
    # near-kernel profile: coefficients of (1 - z/2)^(-p/2), sphere-normalized in _ascend
    kern = np.zeros(2 * m, dtype=float)
    kern[:m] = binom_coeffs(p / 2.0, n) * 0.5 ** np.arange(m) * sqrt_c
    starts.append(kern)
    for _ in range(max(0, opt.restarts - 2)):
        v = rng.standard_normal(2 * m)
        starts.append(v)

    best = None
    converged_restarts = 0
    log = []
    for idx, b0 in enumerate(starts):
        b, val, gn, conv, iters = _ascend(b0, sqrt_c, p, E, opt.max_iter, opt.grad_tol)
        converged_restarts += conv
        log.append({"restart": idx, "iterations": iters,
                    "value": val ** (1.0 / p), "converged": bool(conv)})
        if best is None or (val, -gn) > (best[1], -best[2]):
            best = (b, val, gn)
    b, _, gn = best
    a = (b[:m] + 1j * b[m:]) / sqrt_c
    poly = gauge_fix(Polynomial(a))
    value = hardy_norm(poly, p, quad).value
    return ExtremalResult(value, poly, len(starts), converged_restarts, gn, log)


def _weighted_bergman_p_norm(f, p, alpha, quad):
    if alpha == -1:
        return hardy_norm(f, p, quad)
    return bergman_norm(f, p, alpha, quad)


def verify_kulikov(f, p, q, alpha, beta, quad=DEFAULT_QUAD):
    """Check the Bergman-to-Bergman contraction: the A^q_beta norm never
    exceeds the A^p_alpha norm on the balance line (alpha+2)/p = (beta+2)/q."""
    if not 0 < p < q:
        raise ValueError("need 0 < p < q")
    if not -1 <= alpha < beta:
        raise ValueError("need -1 <= alpha < beta")
    if abs((alpha + 2.0) / p - (beta + 2.0) / q) > 1e-12:
        raise ValueError("parameters off the balance line (alpha+2)/p = (beta+2)/q")
    lhs = _weighted_bergman_p_norm(f, q, beta, quad)
    rhs = _weighted_bergman_p_norm(f, p, alpha, quad)
    est = lhs.est_error + rhs.est_error
    ok = lhs.value <= rhs.value + est + 1e-12
    return KulikovReport(lhs.value, rhs.value, est, ok,
                         {"p": p, "q": q, "alpha": alpha, "beta": beta})


def key_property_chain(q_poly, p, quad=DEFAULT_QUAD):
    """The three-step bound on the gradient integral:

        int |q'|^2 |q|^{p-2} dA  <=  ||q'||^2_{A^{4p/(p+2)}} ||q||^{p-2}_{A^{2p}}
                                 <=  ||q'||^2_{A^2_{2/p-1}} ||q||^{p-2}_{H^p},

    together with the exact coefficient identity for the middle factor,
    ||q'||^2_{A^2_{2/p-1}} = sum k^2 |a_k|^2 / c_{2/p+1}(k-1).
    """
    if p <= 2:
        raise ValueError("p must exceed 2")
    dq = q_poly.derivative()
    if dq.degree == -math.inf:
        return KeyChainReport(0.0, 0.0, 0.0, 0.0, 0.0, True)
    I = disk_gradient_integral(q_poly, p, 1.0, quad)
    pn = 4.0 * p / (p + 2.0)
    H = bergman_norm(dq, pn, 0.0, quad).value ** 2 \
        * bergman_norm(q_poly, 2.0 * p, 0.0, quad).value ** (p - 2.0)
    dnorm2 = bergman2_coeff_norm(dq, 2.0 / p - 1.0) ** 2
    K = dnorm2 * hardy_norm(q_poly, p, quad).value ** (p - 2.0)
    a = q_poly.coeffs
    k = np.arange(1, a.size)
    if k.size:
        w = binom_coeffs(2.0 / p + 1.0, a.size - 2) if a.size >= 2 else np.ones(0)
        S = float(np.sum(k ** 2 * np.abs(a[1:]) ** 2 / w))
    else:
        S = 0.0
    ident_err = abs(dnorm2 - S) / max(S, 1e-300)
    slack = 1e-8
    ok = I <= H * (1 + slack) + 1e-12 and H <= K * (1 + slack) + 1e-12
    return KeyChainReport(I, H, K, S, ident_err, ok)


def contractive_inclusion_gate(p, q=None, alpha=None, beta=None, mode="bergman"):
    """Classify contractivity of the inclusion.

    Bergman mode decides for the inclusion of A^p_alpha into A^q_beta
    (requiring the embedding precondition (alpha+2)/p <= (beta+2)/q when
    p < q); Dirichlet mode decides for D_beta into H^p with p > 2.
    """
    if mode == "bergman":
        if p <= 0 or q <= 0 or alpha < -1 or beta < -1:
            raise ValueError("inadmissible Bergman parameters")
        params = {"p": p, "q": q, "alpha": alpha, "beta": beta}
        if p < q:
            if (alpha + 2.0) / p <= (beta + 2.0) / q + 1e-15:
                return InclusionVerdict(True, "kulikov_chain", params)
            return InclusionVerdict(False, "known_failure", params)
        if alpha <= beta:
            return InclusionVerdict(True, "same_or_bigger_weight", params)
        return InclusionVerdict(False, "known_failure", params)
    if mode == "dirichlet":
        if p <= 2 or beta is None or beta <= 0:
            raise ValueError("Dirichlet mode needs p > 2 and beta > 0")
        params = {"p": p, "beta": beta}
        if abs(beta - p / 2.0) <= 1e-15:
            return InclusionVerdict(True, "kulikov_chain", params)
        if beta > p / 2.0:
            return InclusionVerdict(True, "same_or_bigger_weight", params)
        return InclusionVerdict(False, "known_failure", params)
    raise ValueError(f"unknown mode {mode!r}")
