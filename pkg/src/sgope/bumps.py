"""Smooth compactly supported test functions and mollifiers.

Every test function is a scaled copy of the standard radial bump
t -> exp(-1/(1-t^2)) on |t| < 1.  Because the profile is radial, the
logarithmic potential and Cauchy transform of a bump reduce to
one-dimensional integrals of its cumulative mass profile (shells outside
a radius contribute their own potential, shells inside act like a point
charge at the center).  Those radial integrals are precomputed once and
splined, making bump potentials closed-form for the rest of the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

from .quadrature import gauss_legendre

__all__ = ["BumpFunction", "Mollifier", "std_profile", "c_rho_std"]

TWO_PI = 2.0 * np.pi


def _std_bump(t):
    """exp(-1/(1-t^2)) for |t| < 1, zero outside; vectorized."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ti * ti))
    return out


class _StdProfile:
    """Radial integrals of the normalized standard bump.

    mass(t): fraction of total mass within radius t (mass(1) = 1).
    tail(u): integral of mass(s)/s over s in [u, 1].
    i0: total mass of the unnormalized profile on the unit disk.
    c_rho: (1/2pi) * mutual log-energy of the unit-mass profile with
           itself, equal to (1/2pi) * int_0^1 mass(t)^2 / t dt.
    """

    def __init__(self, panels: int = 2000, order: int = 10):
        edges = np.linspace(0.0, 1.0, panels + 1)
        x, w = gauss_legendre(order)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * np.diff(edges)
        nodes = mid[:, None] + half[:, None] * x[None, :]
        wts = half[:, None] * w[None, :]
        raw = np.sum(wts * (nodes * _std_bump(nodes)), axis=1)
        cum = np.concatenate(([0.0], np.cumsum(raw)))
        self.i0 = TWO_PI * cum[-1]
        mass_edges = cum / cum[-1]
        self._mass = CubicSpline(edges, mass_edges)
        # tail(u) = int_u^1 mass/s ds, accumulated from 1 downward
        m_nodes = self._mass(nodes)
        tail_raw = np.sum(wts * (m_nodes / nodes), axis=1)
        tail_edges = np.concatenate(
            ([0.0], np.cumsum(tail_raw[::-1])))[::-1]
        self._tail = CubicSpline(edges, tail_edges)
        m2_raw = np.sum(wts * (m_nodes ** 2 / nodes), axis=1)
        self.c_rho = float(np.sum(m2_raw)) / TWO_PI

    def mass(self, t):
        t = np.asarray(t, dtype=float)
        return np.clip(self._mass(np.clip(t, 0.0, 1.0)), 0.0, 1.0)

    def tail(self, u):
        u = np.asarray(u, dtype=float)
        return np.where(u >= 1.0, 0.0, self._tail(np.clip(u, 0.0, 1.0)))


@lru_cache(maxsize=1)
def std_profile() -> _StdProfile:
    """Shared write-once profile tables (thread-safe via lru_cache)."""
    return _StdProfile()


def c_rho_std() -> float:
    """Self log-energy constant of the standard unit-radius mollifier."""
    return std_profile().c_rho


@dataclass(frozen=True)
class BumpFunction:
    """amplitude * exp(-1/(1 - |z-center|^2/radius^2)) on its support disk."""

    center: complex
    radius: float
    amplitude: float = 1.0

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError("bump radius must be positive")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        t = np.abs(z - self.center) / self.radius
        return self.amplitude * _std_bump(t)

    @property
    def mass(self) -> float:
        """Total integral of the bump over the plane."""
        return self.amplitude * self.radius ** 2 * std_profile().i0

    @property
    def box(self):
        """Axis-aligned support box (x0, x1, y0, y1)."""
        cx, cy = self.center.real, self.center.imag
        r = self.radius
        return (cx - r, cx + r, cy - r, cy + r)

    def scaled(self, factor: float) -> "BumpFunction":
        return BumpFunction(self.center, self.radius, self.amplitude * factor)

    def mass_within(self, d):
        """Mass inside the disk of radius d about the bump center."""
        return self.mass * std_profile().mass(
            np.asarray(d, dtype=float) / self.radius)

    def log_potential(self, z):
        """int b(v) log|z-v|^{-1} d^2v, exact via the radial shell formula."""
        z = np.asarray(z, dtype=complex)
        d = np.abs(z - self.center)
        prof = std_profile()
        u = d / self.radius
        inside = np.log(1.0 / self.radius) + prof.tail(u)
        with np.errstate(divide="ignore"):
            outside = -np.log(d)
        return self.mass * np.where(u >= 1.0, outside, inside)

    def log_potential_grad(self, z):
        """Wirtinger d/dz of log_potential: -mass_within(|w|)/(2 w), w=z-c."""
        z = np.asarray(z, dtype=complex)
        w = z - self.center
        d = np.abs(w)
        frac = std_profile().mass(d / self.radius)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = -0.5 * self.mass * frac / w
        return np.where(d == 0.0, 0.0, out)

    def cauchy_transform(self, z):
        """int b(v)/(z-v) d^2v = mass_within(|z-c|)/(z-c)."""
        z = np.asarray(z, dtype=complex)
        w = z - self.center
        d = np.abs(w)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = self.mass_within(d) / w
        return np.where(d == 0.0, 0.0, out)


@dataclass(frozen=True)
class Mollifier:
    """Radial, non-negative, unit-mass mollifier supported in B(0, radius)."""

    radius: float = 1.0

    @property
    def base(self) -> BumpFunction:
        amp = 1.0 / (self.radius ** 2 * std_profile().i0)
        return BumpFunction(0.0 + 0.0j, self.radius, amp)

    def __call__(self, z):
        return self.base(z)

    @property
    def c_rho(self) -> float:
        """(1/2pi) * self log-energy; shrinking the support by r adds
        (1/2pi) log(1/r)."""
        return c_rho_std() + np.log(1.0 / self.radius) / TWO_PI
