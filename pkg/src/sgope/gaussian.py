"""Finite-dimensional Gaussian toolkit.

Covariance matrices, Isserlis pairing sums, the complete-the-square
identity E[P(V) e^{z V_1}] = e^{z^2 S_11 / 2} E[P(V + z S_{1,:})], and
reproducible sampling.  Polynomials are sparse maps from exponent tuples
to complex coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CovMatrix",
    "PSD_TOL_FACTOR",
    "JITTER_LADDER",
    "wick_pairing_sum",
    "girsanov_expectation",
    "sample_gaussian_vector",
    "all_pairings",
]

PSD_TOL_FACTOR = 1e-10
JITTER_LADDER = (1e-12, 1e-11, 1e-10, 1e-9, 1e-8)


@dataclass(frozen=True)
class CovMatrix:
    """Symmetric positive semidefinite covariance matrix."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("covariance must be a square matrix")
        if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(a).max())):
            raise ValueError("covariance must be symmetric")
        object.__setattr__(self, "entries", 0.5 * (a + a.T))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def psd_tolerance(self) -> float:
        diag_max = float(np.max(np.diag(self.entries), initial=0.0))
        return PSD_TOL_FACTOR * max(diag_max, 1.0e-300)

    def factor(self) -> np.ndarray:
        """PSD square root L with L @ L.T == entries (after repair).

        Eigenvalues in [-tol, 0) are clipped to zero; a matrix below -tol
        gets the escalating additive jitter ladder, and a failure after
        maximal jitter raises.  Exactly degenerate matrices (zero, rank
        deficient) factor exactly, preserving e.g. perfectly correlated
        coordinates bit for bit.
        """
        tol = self.psd_tolerance()
        sigma = self.entries
        diag_max = float(np.max(np.diag(sigma), initial=0.0))
        w, u = np.linalg.eigh(sigma)
        if w.size and w[0] < -tol:
            for jit in JITTER_LADDER:
                w, u = np.linalg.eigh(sigma + jit * max(diag_max, 1.0)
                                      * np.eye(self.dim))
                if w[0] >= -tol:
                    break
            else:
                raise np.linalg.LinAlgError(
                    f"covariance not PSD after maximal jitter "
                    f"(min eigenvalue {w[0]:.3e}, tolerance {tol:.3e})")
        return u * np.sqrt(np.clip(w, 0.0, None))[None, :]


def _as_cov(sigma) -> CovMatrix:
    return sigma if isinstance(sigma, CovMatrix) else CovMatrix(np.asarray(sigma, dtype=float))


def all_pairings(indices):
    """All perfect matchings of a sequence, by first-element matching."""
    idx = list(indices)
    if len(idx) % 2 == 1:
        return []
    if not idx:
        return [()]
    first, rest = idx[0], idx[1:]
    out = []
    for i, partner in enumerate(rest):
        remainder = rest[:i] + rest[i + 1:]
        for tail in all_pairings(remainder):
            out.append(((first, partner),) + tail)
    return out


def wick_pairing_sum(sigma, indices) -> float:
    """Sum over pairings of products of covariances (Isserlis moment).

    E[V_{i1} ... V_{i2m}] for centered jointly Gaussian V; zero for an
    odd number of indices.  Indices are 0-based and may repeat.
    """
    cov = _as_cov(sigma)
    idx = list(indices)
    for i in idx:
        if not (0 <= i < cov.dim):
            raise IndexError(f"index {i} out of range for dim {cov.dim}")
    if len(idx) % 2 == 1:
        return 0.0
    if not idx:
        return 1.0

    entries = cov.entries

    def rec(rest):
        if not rest:
            return 1.0
        first = rest[0]
        total = 0.0
        for i in range(1, len(rest)):
            total += entries[first, rest[i]] * rec(rest[1:i] + rest[i + 1:])
        return total

    return float(rec(tuple(idx)))


def _monomial_expectation(cov: CovMatrix, exponents) -> float:
    idx = []
    for i, k in enumerate(exponents):
        idx.extend([i] * int(k))
    return wick_pairing_sum(cov, idx)


def girsanov_expectation(sigma, poly, z) -> complex:
    """E[P(V) e^{z V_1}] for centered Gaussian V with covariance sigma.

    poly: dict mapping exponent tuples (k_1, ..., k_n) to complex
    coefficients.  Computed exactly as
    e^{z^2 S_11/2} * E[P(V_1 + z S_11, ..., V_n + z S_1n)], the shifted
    expectation expanded through Isserlis moments.
    """
    cov = _as_cov(sigma)
    tol = cov.psd_tolerance()
    w = np.linalg.eigvalsh(cov.entries)
    if w.size and w[0] < -tol:
        raise ValueError("covariance is not positive semidefinite")
    z = complex(z)
    s = cov.entries[0, :]
    total = 0.0 + 0.0j
    for exponents, coeff in poly.items():
        if len(exponents) > cov.dim:
            raise ValueError("polynomial has more variables than dim")
        # expand prod_i (V_i + z*s_i)^{k_i} by the binomial theorem
        terms = [((), 1.0 + 0.0j)]
        for i, k in enumerate(exponents):
            k = int(k)
            new_terms = []
            for part_exp, part_coeff in terms:
                for j in range(k + 1):
                    c = math.comb(k, j) * (z * s[i]) ** (k - j)
                    new_terms.append((part_exp + (j,), part_coeff * c))
            terms = new_terms
        for exp_tuple, c in terms:
            total += complex(coeff) * c * _monomial_expectation(cov, exp_tuple)
    return complex(np.exp(0.5 * z * z * cov.entries[0, 0]) * total)


def sample_gaussian_vector(sigma, seed: int, count: int) -> np.ndarray:
    """count i.i.d. centered Gaussian vectors with covariance sigma.

    Bit-reproducible for fixed (seed, count); rows are samples.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    cov = _as_cov(sigma)
    L = cov.factor()
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    xi = rng.standard_normal((int(count), cov.dim))
    return xi @ L.T
