"""Norm functionals on the disk and circle.

Coefficient-side norms (weighted Dirichlet, A^2_alpha, H^2) are exact finite
sums.  Quadrature-side norms use the rectangle rule in the angle, which is
spectrally accurate for periodic integrands, with node doubling and a
successive-level error estimate; the radial direction of Bergman norms uses
a Gauss-Jacobi rule in u = r^2 adapted to the (1 - u)^alpha endpoint weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate
from scipy.special import roots_jacobi

from .coeff import binom_coeffs
from .funcspace import AnalyticSampler, MultiPolynomial, Polynomial, TrigPolynomial

__all__ = [
    "QuadratureSpec",
    "NormReport",
    "dirichlet_norm",
    "bergman2_coeff_norm",
    "mean_p",
    "hardy_norm",
    "bergman_norm",
    "disk_gradient_integral",
    "hardy_stein_sides",
    "hardy_stein_residual",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Numerical-control record for the quadrature norms."""

    angular_nodes: int = 256
    radial_nodes: int = 48
    radial_rule: str = "gauss_jacobi"
    rel_tol: float = 1e-12
    max_doublings: int = 8

    def __post_init__(self):
        if self.angular_nodes & (self.angular_nodes - 1):
            raise ValueError("angular_nodes must be a power of two")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.max_doublings < 1:
            raise ValueError("max_doublings must be at least 1")


DEFAULT_QUAD = QuadratureSpec()


@dataclass(frozen=True)
class NormReport:
    value: float
    est_error: float
    nodes_used: dict = field(default_factory=dict)
    converged: bool = True


def _next_pow2(n):
    return 1 << max(0, int(n - 1)).bit_length()


def _initial_angular_nodes(f, p, quad):
    n = quad.angular_nodes
    if isinstance(f, Polynomial):
        deg = f.degree
        if deg != -math.inf and deg > 0:
            # exactness regime for even p; safe oversampling otherwise
            n = max(n, _next_pow2(max(2 * (deg + 1), int(p * deg) + 2)))
    elif isinstance(f, TrigPolynomial):
        width = f.coeffs.size
        n = max(n, _next_pow2(max(2 * width, int(p * width / 2) + 2)))
    return n


def _circle_batch(f, radii, n_theta):
    """Values of f on the n_theta-point uniform grids of |z| = r, r in radii."""
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if isinstance(f, Polynomial):
        c = f.coeffs
        scaled = c[None, :] * np.power(radii[:, None], np.arange(c.size)[None, :])
        return np.fft.ifft(scaled, n=n_theta, axis=1) * n_theta
    if isinstance(f, TrigPolynomial):
        if not np.allclose(radii, 1.0):
            raise ValueError("trigonometric polynomials live on the unit circle")
        row = f.circle_values(n_theta)
        return np.broadcast_to(row, (radii.size, n_theta)).copy()
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    if isinstance(f, AnalyticSampler):
        return f(z)
    if callable(f):
        return f(z)
    raise TypeError(f"cannot sample object of type {type(f)!r}")


def dirichlet_norm(f, beta):
    """Weighted Dirichlet norm (sum of c_beta weights against |a|^2)^(1/2).

    For several variables the weight of a monomial is the product of the
    univariate weights of its partial degrees.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    if isinstance(f, Polynomial):
        w = binom_coeffs(beta, f.coeffs.size - 1)
        return float(np.sqrt(np.sum(w * np.abs(f.coeffs) ** 2)))
    if isinstance(f, MultiPolynomial):
        sq = np.abs(f.coeffs) ** 2
        for axis, size in enumerate(f.coeffs.shape):
            w = binom_coeffs(beta, size - 1)
            shape = [1] * f.coeffs.ndim
            shape[axis] = size
            sq = sq * w.reshape(shape)
        return float(np.sqrt(sq.sum()))
    raise TypeError("dirichlet_norm expects a Polynomial or MultiPolynomial")


def bergman2_coeff_norm(f, alpha):
    """A^2_alpha norm from Taylor coefficients: (sum |a_n|^2 / c_{alpha+2}(n))^(1/2).

    alpha = -1 is the H^2 case, where the weights are identically one
    (Parseval).
    """
    if alpha < -1:
        raise ValueError("alpha must be at least -1")
    if not isinstance(f, Polynomial):
        raise TypeError("bergman2_coeff_norm expects a Polynomial")
    w = binom_coeffs(alpha + 2, f.coeffs.size - 1)
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 / w)))


def mean_p(f, r, p, quad=DEFAULT_QUAD):
    """Integral p-mean M_p(r, f) on the circle of radius r.

    Rectangle rule with node doubling; est_error is the change between the
    last two refinement levels.  The converged flag drops when the doubling
    budget runs out, which typically signals a zero of f very near the
    circle combined with a non-even exponent.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        if isinstance(f, (Polynomial, AnalyticSampler)):
            v0 = abs(complex(np.asarray(f(0.0 + 0.0j)).reshape(())))
        elif isinstance(f, TrigPolynomial):
            raise ValueError("trigonometric polynomials live on the unit circle")
        else:
            v0 = abs(complex(np.asarray(f(np.array([0.0 + 0.0j]))).reshape(-1)[0]))
        return NormReport(v0, 0.0, {"angular": 1})
    n = _initial_angular_nodes(f, p, quad)
    prev = None
    value = 0.0
    converged = False
    for _ in range(quad.max_doublings + 1):
        vals = _circle_batch(f, [r], n)[0]
        mp = float(np.mean(np.abs(vals) ** p))
        value = mp ** (1.0 / p)
        if prev is not None and abs(value - prev) <= quad.rel_tol * max(value, 1e-300):
            converged = True
            break
        prev = value
        n *= 2
    est = abs(value - prev) if prev is not None else float("inf")
    return NormReport(value, est, {"angular": n}, converged)


def hardy_norm(f, p, quad=DEFAULT_QUAD):
    """H^p norm: the p-mean on the boundary circle."""
    return mean_p(f, 1.0, p, quad)


_JACOBI_CACHE = {}


def _jacobi_nodes(n, alpha):
    key = (n, round(alpha, 14))
    if key not in _JACOBI_CACHE:
        x, w = roots_jacobi(n, alpha, 0.0)
        _JACOBI_CACHE[key] = ((x + 1.0) / 2.0, w * 2.0 ** (-alpha - 1.0))
    return _JACOBI_CACHE[key]


def bergman_norm(f, p, alpha, quad=DEFAULT_QUAD):
    """Weighted Bergman norm ((alpha+1) int_D (1-|z|^2)^alpha |f|^p dA)^(1/p).

    Substituting u = r^2 turns the radial factor into the Jacobi weight
    (1 - u)^alpha on [0, 1], handled by a Gauss-Jacobi rule; the (alpha+1)
    normalization makes constants have norm |c|.  Radial and angular node
    counts are doubled together until the value settles.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    n_theta = _initial_angular_nodes(f, p, quad)
    n_r = quad.radial_nodes
    prev = None
    value = 0.0
    converged = False
    for _ in range(quad.max_doublings + 1):
        u, w = _jacobi_nodes(n_r, alpha)
        vals = _circle_batch(f, np.sqrt(u), n_theta)
        ang_means = np.mean(np.abs(vals) ** p, axis=1)
        ip = (alpha + 1.0) * float(w @ ang_means)
        value = ip ** (1.0 / p)
        if prev is not None and abs(value - prev) <= quad.rel_tol * max(value, 1e-300):
            converged = True
            break
        prev = value
        n_r *= 2
        n_theta *= 2
    est = abs(value - prev) if prev is not None else float("inf")
    return NormReport(value, est, {"angular": n_theta, "radial": n_r}, converged)


def _interior_root_splits(f, radius):
    """Radial split points u = (|z0| / radius)^2 for the zeros of f in the disk
    of the given radius; the integrand |f'|^2 |f|^{p-2} loses smoothness there."""
    c = f.coeffs
    nz = np.flatnonzero(c)
    if nz.size == 0 or nz[-1] == 0:
        return []
    roots = np.polynomial.polynomial.polyroots(c[: nz[-1] + 1])
    u = sorted((abs(z) / radius) ** 2 for z in roots if 0 < abs(z) < radius)
    merged = []
    for x in u:
        if not merged or x - merged[-1] > 1e-12:
            merged.append(x)
    return merged


def _angular_nodes_for_gradient(f, p, radius, cap=8192):
    """Pick a fixed angular node count for |f'|^2 |f|^{p-2} by probing.

    Probes include the radii of interior zeros, where the angular
    convergence is slowest.
    """
    df = f.derivative()
    n = max(512, _next_pow2(4 * f.coeffs.size))
    probes = [0.3 * radius, 0.62 * radius, 0.94 * radius]
    for u in _interior_root_splits(f, radius):
        for du in (-0.02, 0.0, 0.02):
            v = min(max(u + du, 0.0), 1.0)
            probes.append(radius * math.sqrt(v))
    for r in probes:
        while n < cap:
            a = _gradient_angular_mean(f, df, p, r, n)
            b = _gradient_angular_mean(f, df, p, r, 2 * n)
            if abs(a - b) <= 1e-13 * max(abs(b), 1.0):
                break
            n *= 2
    return n


def _gradient_angular_mean(f, df, p, r, n_theta):
    fv = _circle_batch(f, [r], n_theta)[0]
    dv = _circle_batch(df, [r], n_theta)[0]
    return float(np.mean(np.abs(dv) ** 2 * np.abs(fv) ** (p - 2.0)))


def disk_gradient_integral(f, p, radius=1.0, quad=DEFAULT_QUAD):
    """int over the disk of the given radius of |f'|^2 |f|^{p-2} dA,
    with dA the area measure normalized so the unit disk has mass 1.

    Radial integration is adaptive with explicit break points at the moduli
    of the interior zeros of f, where the integrand is continuous but not
    smooth (p > 2 keeps it bounded).
    """
    if not isinstance(f, Polynomial):
        raise TypeError("disk_gradient_integral expects a Polynomial")
    if p < 2 and _interior_root_splits(f, radius):
        raise ValueError("p < 2 makes the integrand singular at zeros of f")
    df = f.derivative()
    if df.degree == -math.inf:
        return 0.0
    n_theta = _angular_nodes_for_gradient(f, p, radius)
    splits = _interior_root_splits(f, radius)

    def integrand(u):
        return _gradient_angular_mean(f, df, p, radius * math.sqrt(u), n_theta)

    val, _ = integrate.quad(integrand, 0.0, 1.0,
                            points=splits if splits else None,
                            limit=300, epsabs=1e-12, epsrel=1e-12)
    return radius ** 2 * val


def hardy_stein_sides(f, p, r, quad=DEFAULT_QUAD):
    """Both sides of the radial-derivative identity
    d/dr M_p^p(r, f) = (p^2 / 2r) * int_{rD} |f'|^2 |f|^{p-2} dA.

    The left side is a central finite difference of M_p^p with step
    h = 1e-4 * min(r, 1 - r), balancing truncation against cancellation at
    double precision.
    """
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0, 1)")
    tight = QuadratureSpec(angular_nodes=quad.angular_nodes,
                           radial_nodes=quad.radial_nodes,
                           rel_tol=min(quad.rel_tol, 1e-13),
                           max_doublings=max(quad.max_doublings, 10))
    h = 1e-4 * min(r, 1.0 - r)
    hi = mean_p(f, r + h, p, tight)
    lo = mean_p(f, r - h, p, tight)
    lhs = (hi.value ** p - lo.value ** p) / (2.0 * h)
    converged = hi.converged and lo.converged
    if p < 2 and _interior_root_splits(f, r):
        # |f|^{p-2} blows up at interior zeros; the flag makes that observable
        return lhs, float("nan"), False
    rhs = (p ** 2 / (2.0 * r)) * disk_gradient_integral(f, p, r, quad)
    return lhs, rhs, converged


def hardy_stein_residual(f, p, r, quad=DEFAULT_QUAD):
    """Absolute mismatch between the two sides of the identity."""
    lhs, rhs, _ = hardy_stein_sides(f, p, r, quad)
    return abs(lhs - rhs)
