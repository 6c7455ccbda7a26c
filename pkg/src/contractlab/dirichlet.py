"""Finite Dirichlet polynomials, the lift to the polytorus, and desk-scale
verification of the contraction between their Hardy-type and weighted
coefficient norms.

The long-time mean of a Dirichlet polynomial is defined here through its
lift: the monomial of k = prod p_j^{e_j} is z_1^{e_1} ... z_d^{e_d}, and the
mean equals the corresponding torus norm.  Direct interval averages converge
only like O(1/T), so they serve as a consistency probe, not as an anchor for
tight tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeff import smallest_prime_factors, zeta_power_coeffs
from .funcspace import MultiPolynomial
from .norms import DEFAULT_QUAD, NormReport, _next_pow2

__all__ = [
    "DirichletPolynomial",
    "BohrLift",
    "bohr_lift",
    "hardy_norm_torus",
    "torus_norm_even_parseval",
    "dirichlet_series_rhs",
    "verify_coro_dirichlet",
    "helson_check",
    "besicovitch_probe",
]

MAX_TORUS_DIM = 3

# per-axis node caps keeping the tensor grid at or below ~2^24 points
_AXIS_CAP = {1: 1 << 20, 2: 1 << 11, 3: 1 << 8}


@dataclass(frozen=True)
class DirichletPolynomial:
    """Finite sum a_1 + a_2 2^{-it} + ... + a_n n^{-it}; coeffs[k-1] = a_k."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.size < 1:
            raise ValueError("need at least the k = 1 coefficient")
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self):
        return self.coeffs.size

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        logs = np.log(np.arange(1, self.n + 1))
        return np.exp(-1j * np.multiply.outer(t, logs)) @ self.coeffs

    def to_json(self):
        return [[float(a.real), float(a.imag)] for a in self.coeffs]

    @classmethod
    def from_json(cls, pairs):
        return cls(np.array([complex(re, im) for re, im in pairs]))


@dataclass(frozen=True)
class BohrLift:
    primes: tuple
    image: MultiPolynomial


def _primes_upto(n):
    spf = smallest_prime_factors(max(n, 2))
    return tuple(int(q) for q in range(2, n + 1) if spf[q] == q)


def bohr_lift(f):
    """Exact coefficient relocation: a_k moves to the monomial of the prime
    factorization of k."""
    n = f.n
    primes = _primes_upto(n) if n >= 2 else (2,)
    d = len(primes)
    spf = smallest_prime_factors(max(n, 2))
    shape = []
    exps = {}
    for k in range(1, n + 1):
        e = [0] * d
        m = k
        while m > 1:
            q = int(spf[m])
            j = primes.index(q)
            while m % q == 0:
                m //= q
                e[j] += 1
        exps[k] = tuple(e)
    shape = tuple(max(exps[k][j] for k in exps) + 1 for j in range(d))
    coeffs = np.zeros(shape, dtype=complex)
    for k in range(1, n + 1):
        coeffs[exps[k]] += f.coeffs[k - 1]
    return BohrLift(primes, MultiPolynomial(coeffs))


def hardy_norm_torus(f, p, quad=DEFAULT_QUAD):
    """H^p(T^d) norm by a tensor rectangle rule with per-axis node doubling."""
    if p <= 0:
        raise ValueError("p must be positive")
    if not isinstance(f, MultiPolynomial):
        raise TypeError("hardy_norm_torus expects a MultiPolynomial")
    d = f.dims
    if d > MAX_TORUS_DIM:
        raise ValueError(f"torus dimension capped at {MAX_TORUS_DIM}")
    cap = _AXIS_CAP[d]
    max_deg = max(f.coeffs.shape) - 1
    n = max(32, _next_pow2(max(2 * (max_deg + 1), int(p * max_deg) + 2)))
    n = min(n, cap)
    prev = None
    value = 0.0
    converged = False
    for _ in range(quad.max_doublings + 1):
        vals = f.torus_values(n)
        mp = float(np.mean(np.abs(vals) ** p))
        value = mp ** (1.0 / p)
        if prev is not None and abs(value - prev) <= quad.rel_tol * max(value, 1e-300):
            converged = True
            break
        if n >= cap:
            converged = prev is not None and \
                abs(value - prev) <= 1e3 * quad.rel_tol * max(value, 1e-300)
            break
        prev = value
        n *= 2
    est = abs(value - prev) if prev is not None else float("inf")
    return NormReport(value, est, {"per_axis": n, "dims": d}, converged)


def torus_norm_even_parseval(f, p):
    """Exact H^p(T^d) norm for even integer p via Parseval of f^{p/2}."""
    half = int(round(p / 2))
    if abs(p - 2 * half) > 1e-12 or half < 1:
        raise ValueError("p must be a positive even integer")
    power = np.ones((1,) * f.dims, dtype=complex)
    from scipy.signal import convolve
    for _ in range(half):
        power = convolve(power, f.coeffs)
    return float(np.sum(np.abs(power) ** 2)) ** (1.0 / p)


def dirichlet_series_rhs(f, p):
    """Weighted coefficient norm (sum |a_k|^2 d_{p/2}(k))^(1/2); equal to the
    weighted Dirichlet norm of the lift by multiplicativity of the weights."""
    if p <= 2:
        raise ValueError("p must exceed 2")
    d = zeta_power_coeffs(p / 2.0, f.n)
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 * d.values)))


@dataclass(frozen=True)
class ContractionReport:
    lhs: float
    rhs: float
    est_error: float
    ok: bool
    params: dict


def verify_coro_dirichlet(f, p, quad=DEFAULT_QUAD):
    """Long-time p-mean of the Dirichlet polynomial (computed as the torus
    norm of its lift) against the weighted coefficient norm."""
    if p <= 2:
        raise ValueError("p must exceed 2")
    lift = bohr_lift(f)
    lhs = hardy_norm_torus(lift.image, p, quad)
    rhs = dirichlet_series_rhs(f, p)
    ok = lhs.value <= rhs + lhs.est_error + 1e-12
    return ContractionReport(lhs.value, rhs, lhs.est_error, ok,
                             {"p": p, "n": f.n, "dims": lift.image.dims})


def helson_check(f, quad=DEFAULT_QUAD):
    """(sum |a_k|^2 / d_2(k))^(1/2) against the long-time L^1 mean."""
    d2 = zeta_power_coeffs(2.0, f.n)
    lhs = float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 / d2.values)))
    lift = bohr_lift(f)
    rhs = hardy_norm_torus(lift.image, 1.0, quad)
    ok = lhs <= rhs.value + rhs.est_error + 1e-9
    return ContractionReport(lhs, rhs.value, rhs.est_error, ok,
                             {"p": 1.0, "n": f.n, "dims": lift.image.dims})


def besicovitch_probe(f, p, t_max=1e4, steps=8, dt=0.01):
    """Direct interval averages (1/2T) int_{-T}^{T} |f|^p dt along a doubling
    ladder of T, ending at t_max; convergence to the torus value is slow
    (Weyl equidistribution), so agreement is only expected to a few percent.
    """
    if t_max < 1e3:
        raise ValueError("t_max must be at least 1e3")
    t = np.arange(-t_max, t_max + dt, dt)
    vals = np.abs(f(t)) ** p
    ladder = []
    for j in range(steps - 1, -1, -1):
        T = t_max / 2 ** j
        m = np.abs(t) <= T
        mean = float(np.mean(vals[m]))
        ladder.append((T, mean ** (1.0 / p)))
    return ladder
