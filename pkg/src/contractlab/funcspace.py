"""Function representations: Taylor polynomials on the disk, two-sided
trigonometric polynomials on the circle, closed-form samplers (extremal
kernels and the Riesz test family), and polynomials in several variables.

Complex powers use the principal branch throughout.  Every base that occurs,
1 - conj(zeta) * z with |zeta| < 1 and |z| <= 1, has positive real part, so
no branch-cut tracking is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .coeff import binom_coeffs

__all__ = [
    "Polynomial",
    "TrigPolynomial",
    "AnalyticSampler",
    "MultiPolynomial",
    "evaluate",
    "kernel_sampler",
    "riesz_test_function",
    "riesz_test_coeffs",
    "riesz_truncation_order",
]


@dataclass(frozen=True)
class Polynomial:
    """Finite Taylor series a_0 + a_1 z + ... + a_n z^n."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d array")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        """Index of the last nonzero coefficient; -inf for the zero polynomial."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -math.inf

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def dilate(self, r):
        """f(z) -> f(r z); coefficient k is scaled by r^k."""
        if not 0.0 <= r <= 1.0:
            raise ValueError("dilation radius must lie in [0, 1]")
        k = np.arange(self.coeffs.size)
        return Polynomial(self.coeffs * np.power(float(r), k))

    def derivative(self):
        if self.coeffs.size == 1:
            return Polynomial(np.zeros(1, dtype=complex))
        k = np.arange(1, self.coeffs.size)
        return Polynomial(self.coeffs[1:] * k)

    def circle_values(self, r, n_nodes):
        """Values on the n_nodes-point uniform grid of the circle |z| = r.

        FFT synthesis; exact when n_nodes exceeds the degree.
        """
        c = self.coeffs
        if n_nodes <= c.size - 1:
            raise ValueError("grid too coarse for the polynomial degree")
        scaled = c * np.power(float(r), np.arange(c.size))
        return np.fft.ifft(scaled, n=n_nodes) * n_nodes

    def to_json(self):
        return [[float(a.real), float(a.imag)] for a in self.coeffs]

    @classmethod
    def from_json(cls, pairs):
        return cls(np.array([complex(re, im) for re, im in pairs]))


@dataclass(frozen=True)
class TrigPolynomial:
    """Two-sided trigonometric polynomial sum_k c_k e^{i k t}.

    ``coeffs[j]`` is the Fourier coefficient at frequency ``k_min + j``.
    """

    coeffs: np.ndarray
    k_min: int = 0

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        object.__setattr__(self, "coeffs", c)

    @property
    def k_max(self):
        return self.k_min + self.coeffs.size - 1

    @property
    def frequencies(self):
        return np.arange(self.k_min, self.k_max + 1)

    def coefficient(self, k):
        if self.k_min <= k <= self.k_max:
            return self.coeffs[k - self.k_min]
        return 0.0 + 0.0j

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.exp(1j * np.multiply.outer(theta, self.frequencies)) @ self.coeffs

    def circle_values(self, n_nodes):
        """Values on the uniform grid of T; exact when n_nodes > bandwidth."""
        if n_nodes < self.coeffs.size:
            raise ValueError("grid too coarse for the trig polynomial bandwidth")
        spec = np.zeros(n_nodes, dtype=complex)
        for k, c in zip(self.frequencies, self.coeffs):
            spec[k % n_nodes] += c
        return np.fft.ifft(spec) * n_nodes

    def is_real_valued(self, tol=1e-12):
        for k in range(0, self.k_max + 1):
            if abs(self.coefficient(k) - np.conj(self.coefficient(-k))) > tol:
                return False
        return True


@dataclass(frozen=True)
class AnalyticSampler:
    """Point-evaluatable function with a tagged parameter record."""

    eval: Callable[[np.ndarray], np.ndarray]
    descriptor: dict = field(default_factory=dict)

    def __call__(self, z):
        return self.eval(z)

    def circle_values(self, r, n_nodes):
        theta = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
        return self.eval(r * np.exp(1j * theta))


@dataclass(frozen=True)
class MultiPolynomial:
    """Polynomial in d variables; coeffs is a d-dimensional array indexed
    by the multi-degree (k_1, ..., k_d)."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim < 1:
            c = c.reshape(1)
        object.__setattr__(self, "coeffs", c)

    @property
    def dims(self):
        return self.coeffs.ndim

    def __call__(self, *z):
        if len(z) != self.dims:
            raise ValueError("expected one argument per variable")
        vals = self.coeffs
        for zj in reversed(z):
            vals = np.polynomial.polynomial.polyval(zj, np.moveaxis(vals, -1, 0))
        return vals

    def torus_values(self, n_per_axis):
        """Values on the uniform tensor grid of T^d via zero-padded inverse FFT."""
        if any(n_per_axis <= s - 1 for s in self.coeffs.shape):
            raise ValueError("grid too coarse for the multi-degree")
        s = (n_per_axis,) * self.dims
        axes = tuple(range(self.dims))
        return np.fft.ifftn(self.coeffs, s=s, axes=axes) * (n_per_axis ** self.dims)


def evaluate(f, z):
    """Evaluate any of the function representations at a point or array."""
    if isinstance(f, (Polynomial, AnalyticSampler)):
        return f(z)
    if isinstance(f, MultiPolynomial):
        return f(*z)
    if callable(f):
        return f(z)
    raise TypeError(f"cannot evaluate object of type {type(f)!r}")


def kernel_sampler(p, alpha, zeta, C=1.0):
    """Extremal kernel C (1-|zeta|^2)^((alpha+2)/p) / (1 - conj(zeta) z)^(2(alpha+2)/p).

    With C = 1 this is the unit-norm extremal of the Bergman-to-Bergman
    contraction; zeta = 0 collapses it to the constant C.
    """
    if abs(zeta) >= 1:
        raise ValueError("zeta must lie in the open unit disk")
    e = (alpha + 2.0) / p
    zbar = np.conj(complex(zeta))
    amp = complex(C) * (1.0 - abs(zeta) ** 2) ** e

    def _eval(z):
        z = np.asarray(z, dtype=complex)
        den = 1.0 - zbar * z
        if np.any(den == 0):
            raise ZeroDivisionError("kernel pole hit: 1 - conj(zeta) z = 0")
        return amp * den ** (-2.0 * e)

    return AnalyticSampler(_eval, {"kind": "kernel", "p": p, "alpha": alpha,
                                   "zeta": complex(zeta), "C": complex(C)})


def riesz_truncation_order(eps, tol=1e-12):
    """Frequency cutoff for the series expansion of the Riesz test family.

    The negative-frequency tail has coefficients c_gamma(n) eps^n, bounded by
    geometric decay, so K = max(64, ceil(log tol / log eps)) suffices.
    """
    return max(64, int(math.ceil(math.log(tol) / math.log(eps))))


def riesz_test_function(p_prime, eps):
    """The test family F_eps and the closed form of its analytic projection.

    F_eps(e^{it}) = (1 - eps e^{it}) / (1 - eps e^{-it})^(1 - 2/p'),
    sampled pointwise on T.  The projection onto nonnegative frequencies is
    the two-term polynomial (1 - gamma eps^2) - eps e^{it} with
    gamma = 1 - 2/p'.
    """
    if not 1.0 < p_prime <= 2.0:
        raise ValueError("p_prime must lie in (1, 2]")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1); eps >= 1 hits the boundary singularity")
    gamma = 1.0 - 2.0 / p_prime

    def _eval(z):
        z = np.asarray(z, dtype=complex)
        return (1.0 - eps * z) * (1.0 - eps * np.conj(z)) ** (-gamma)

    sampler = AnalyticSampler(_eval, {"kind": "riesz_eps", "p_prime": p_prime,
                                      "eps": eps, "gamma": gamma})
    projected = TrigPolynomial(np.array([1.0 - gamma * eps ** 2, -eps],
                                        dtype=complex), k_min=0)
    return sampler, projected


def riesz_test_coeffs(p_prime, eps, tol=1e-12):
    """Full two-sided Fourier expansion of F_eps, truncated at the cutoff K.

    Frequency m <= 0 carries eps^{-m} (c_gamma(-m) - eps^2 c_gamma(1-m)),
    frequency 1 carries -eps, everything above vanishes.
    """
    if not 1.0 < p_prime <= 2.0:
        raise ValueError("p_prime must lie in (1, 2]")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    gamma = 1.0 - 2.0 / p_prime
    K = riesz_truncation_order(eps, tol)
    c_gamma = binom_coeffs(gamma, K + 1)
    coeffs = np.zeros(K + 2, dtype=complex)  # frequencies -K .. 1
    m = np.arange(-K, 1)
    coeffs[: K + 1] = eps ** (-m) * (c_gamma[-m] - eps ** 2 * c_gamma[1 - m])
    coeffs[K + 1] = -eps
    return TrigPolynomial(coeffs, k_min=-K)
