"""Weight sequences, the monotone ratio sequence, and generalized divisor coefficients.

The binomial-type weights c_beta(n) are the Taylor coefficients of
(1 - z)^(-beta).  They parametrize every coefficient-side norm in this
package.  The generalized divisor function d_alpha(k) gives the Dirichlet
coefficients of zeta(s)^alpha and is multiplicative with
d_alpha(q^a) = c_alpha(a) on prime powers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "WeightSequence",
    "DivisorSequence",
    "binom_coeff",
    "binom_coeffs",
    "weight_sequence",
    "ratio_Ak",
    "ratio_Ak_seq",
    "zeta_power_coeffs",
    "smallest_prime_factors",
]


@dataclass(frozen=True)
class WeightSequence:
    """c_beta(0..n) for a fixed exponent beta."""

    beta: float
    values: np.ndarray

    def __getitem__(self, n):
        return self.values[n]


@dataclass(frozen=True)
class DivisorSequence:
    """d_alpha(1..n); values[k-1] holds d_alpha(k)."""

    alpha: float
    values: np.ndarray

    def __getitem__(self, k):
        if k < 1:
            raise IndexError("divisor sequence starts at k = 1")
        return self.values[k - 1]


def binom_coeffs(beta, n_max, require_positive=False):
    """Coefficients c_beta(0), ..., c_beta(n_max) by the forward recurrence.

    The recurrence n * c_beta(n) = (n - 1 + beta) * c_beta(n - 1) avoids the
    overflow of direct Gamma ratios.  Exponents beta > -1 are accepted;
    callers that rely on positivity of the weights pass
    ``require_positive=True``, which restricts to beta > 0.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if beta <= -1:
        raise ValueError("beta must exceed -1")
    if require_positive and beta <= 0:
        raise ValueError("positive weights require beta > 0")
    out = np.empty(n_max + 1)
    out[0] = 1.0
    # multiply before dividing keeps every step exact for integer beta
    # (c_1 = 1 and c_2(n) = n + 1 without rounding); for real beta the
    # rounding drift stays near the 1e-14 level out to n = 10^4
    acc = 1.0
    for n in range(1, n_max + 1):
        acc = acc * (beta + (n - 1)) / n
        out[n] = acc
    return out


def binom_coeff(beta, n, require_positive=False):
    """Single coefficient c_beta(n)."""
    return binom_coeffs(beta, n, require_positive=require_positive)[n]


def weight_sequence(beta, n_max, require_positive=False):
    return WeightSequence(beta, binom_coeffs(beta, n_max, require_positive))


def ratio_Ak(p, k):
    """The monotone sequence A_k = c_{p/2}(k) c_{2/p+1}(k-1) / k, for p > 2.

    Consecutive terms satisfy A_{k+1}/A_k = (k + p/2)(k + 2/p) / (k + 1)^2,
    which exceeds 1 strictly for p > 2.  At p = 2 the ratio degenerates to 1,
    so that boundary is rejected.
    """
    if p <= 2:
        raise ValueError("A_k is strictly increasing only for p > 2")
    if k < 1:
        raise ValueError("k must be at least 1")
    return binom_coeff(p / 2, k) * binom_coeff(2 / p + 1, k - 1) / k


def ratio_Ak_seq(p, k_max):
    """A_1, ..., A_{k_max} in one pass."""
    if p <= 2:
        raise ValueError("A_k is strictly increasing only for p > 2")
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    c_half_p = binom_coeffs(p / 2, k_max)
    c_dual = binom_coeffs(2 / p + 1, k_max - 1)
    k = np.arange(1, k_max + 1, dtype=float)
    return c_half_p[1:] * c_dual / k


def smallest_prime_factors(n_max):
    """Sieve of smallest prime factors for 2..n_max (spf[0] = spf[1] = 0)."""
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for i in range(2, n_max + 1):
        if spf[i] == 0:
            view = spf[i::i]
            view[view == 0] = i
    return spf


def zeta_power_coeffs(alpha, n_max):
    """Dirichlet coefficients d_alpha(1..n_max) of zeta(s)^alpha.

    Built multiplicatively from the prime factorization: if
    k = prod q_j^{a_j} then d_alpha(k) = prod c_alpha(a_j).
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    spf = smallest_prime_factors(n_max)
    max_exp = int(np.log2(max(n_max, 2))) + 1
    c_alpha = binom_coeffs(alpha, max_exp)
    d = np.ones(n_max + 1)
    for k in range(2, n_max + 1):
        q = spf[k]
        a = 0
        m = k
        while m % q == 0:
            m //= q
            a += 1
        d[k] = d[m] * c_alpha[a]
    return DivisorSequence(alpha, d[1:])
