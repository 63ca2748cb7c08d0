"""Dirichlet Green's function of the disk and smeared kernels.

Conventions: points are complex numbers z = x1 + i*x2.  Wirtinger
derivatives are d = (d/dx1 - i d/dx2)/2 and dbar = (d/dx1 + i d/dx2)/2.
On the unit disk

    G(x, y) = (1/2pi) log|x - y|^{-1} - (1/2pi) log|1 - x conj(y)|^{-1},

and the harmonic part is g(x, y) = (1/2pi) log|1 - x conj(y)|.  A disk of
radius R centered at c is handled by conformal rescaling (G is invariant,
derivatives pick up powers of 1/R).

Smeared kernels against radial bumps use the mean-value property of the
harmonic part (exact) plus the bumps' radial shell potentials, so they
reduce to closed forms or low-dimensional smooth quadratures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bumps import BumpFunction
from .quadrature import gauss_legendre

__all__ = [
    "DiskDomain",
    "green",
    "harmonic_part",
    "green_deriv",
    "green_potential",
    "green_potential_grad",
    "smeared_green",
]

TWO_PI = 2.0 * np.pi
FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class DiskDomain:
    """Open disk of given radius and center; canonical: unit disk at 0."""

    radius: float = 1.0
    center: complex = 0.0 + 0.0j

    def __post_init__(self):
        if not (self.radius > 0.0):
            raise ValueError("domain radius must be positive")

    def map_in(self, z):
        """Rescale to unit-disk coordinates."""
        return (np.asarray(z, dtype=complex) - self.center) / self.radius

    def contains(self, z, margin: float = 0.0) -> bool:
        z = np.asarray(z, dtype=complex)
        return bool(np.all(np.abs(z - self.center) < self.radius - margin))


UNIT_DISK = DiskDomain()


def _check_inside(dom: DiskDomain, *points):
    for p in points:
        if not dom.contains(p):
            raise ValueError("point outside the domain")


def green_mapped(xh, yh):
    """Unit-disk Green's function on pre-mapped coordinates (no checks)."""
    return (np.log(np.abs(1.0 - xh * np.conj(yh)))
            - np.log(np.abs(xh - yh))) / TWO_PI


def green(dom: DiskDomain, x, y):
    """Dirichlet Green's function G(x, y); x != y, both strictly inside."""
    _check_inside(dom, x, y)
    xh, yh = dom.map_in(x), dom.map_in(y)
    if np.any(np.abs(xh - yh) == 0.0):
        raise ValueError("coincident points")
    val = green_mapped(xh, yh)
    return val if val.shape else float(val)


def harmonic_part(dom: DiskDomain, x, y):
    """g(x, y) = G - (1/2pi) log|x-y|^{-1}; finite on the diagonal."""
    _check_inside(dom, x, y)
    xh, yh = dom.map_in(x), dom.map_in(y)
    val = (np.log(np.abs(1.0 - xh * np.conj(yh)))
           - np.log(dom.radius)) / TWO_PI
    return val if val.shape else float(val)


def green_deriv(dom: DiskDomain, x, y, kind: str):
    """Wirtinger derivatives of G.

    kind = 'dx':      d_x G = -(1/4pi) [1/(x-y) + conj(y)/(1 - x conj(y))]
                      (unit-disk coordinates; 1/R per derivative otherwise)
    kind = 'dx_dy':   d_x d_y G = -(1/4pi) (x-y)^{-2}; the harmonic part
                      contributes exactly zero.
    kind = 'dx_dybar': d_x dbar_y G = -(1/4pi) (1 - x conj(y))^{-2} off the
                      diagonal (the log term has no mixed d-dbar part).
    """
    _check_inside(dom, x, y)
    xh, yh = dom.map_in(x), dom.map_in(y)
    if kind != "dx_dybar" and np.any(np.abs(xh - yh) == 0.0):
        raise ValueError("coincident points")
    R = dom.radius
    if kind == "dx":
        val = -(1.0 / (xh - yh)
                + np.conj(yh) / (1.0 - xh * np.conj(yh))) / (FOUR_PI * R)
    elif kind == "dx_dy":
        val = -1.0 / (FOUR_PI * (R * (xh - yh)) ** 2)
    elif kind == "dx_dybar":
        val = -1.0 / (FOUR_PI * R ** 2 * (1.0 - xh * np.conj(yh)) ** 2)
    else:
        raise ValueError(f"unknown derivative kind {kind!r}")
    val = np.asarray(val)
    return val if val.shape else complex(val)


def harmonic_deriv2(dom: DiskDomain, x, y):
    """d_y of g(x, y) in the second argument: -(1/4pi) conj(xh)/(1-conj(xh) yh) / R."""
    xh, yh = dom.map_in(x), dom.map_in(y)
    return -np.conj(xh) / (FOUR_PI * dom.radius * (1.0 - np.conj(xh) * yh))


def green_potential(dom: DiskDomain, b: BumpFunction, z):
    """int b(v) G(v, z) d^2v, exact for radial bumps inside the domain.

    Log part via the shell potential of b; harmonic part via the mean
    value property: int b(v) g(v, z) dv = mass(b) * g(center_b, z).
    """
    z = np.asarray(z, dtype=complex)
    log_part = b.log_potential(z) / TWO_PI
    harm = b.mass * harmonic_part(dom, b.center, z)
    return log_part + harm


def green_potential_grad(dom: DiskDomain, b: BumpFunction, z):
    """Wirtinger d/dz of green_potential (the smooth field of Lemma-type
    smeared first derivatives): int b(v) d_z G(v, z) d^2v."""
    z = np.asarray(z, dtype=complex)
    log_part = b.log_potential_grad(z) / TWO_PI
    harm = b.mass * harmonic_deriv2(dom, b.center, z)
    return log_part + harm


def smeared_green(dom: DiskDomain, a: BumpFunction, b: BumpFunction,
                  n_r: int = 48, n_theta: int = 96):
    """int int a(x) b(y) G(x, y) dx dy.

    The y-integral is green_potential(b, .) in closed form; the remaining
    x-integral over the radial bump a is done on shells of a:
    int a(x) F(|x - c_a|, angle) = int_0^{R_a} m_a'(r) <F>_circle(r) dr.
    The integrand is smooth (the log potential of b is continuous), so a
    tensor Gauss rule in (r, theta) converges fast.
    """
    if not (dom.contains(a.center, 0.0) and dom.contains(b.center, 0.0)):
        raise ValueError("bump supports must lie inside the domain")
    r_nodes, r_wts = gauss_legendre(n_r)
    t_nodes, t_wts = gauss_legendre(n_theta)
    r = 0.5 * a.radius * (r_nodes + 1.0)
    wr = 0.5 * a.radius * r_wts
    th = np.pi * (t_nodes + 1.0)
    wth = np.pi * t_wts
    ring_density = TWO_PI * r * a(a.center + r)  # m_a'(r)
    Z = a.center + r[:, None] * np.exp(1j * th)[None, :]
    vals = green_potential(dom, b, Z.ravel()).reshape(Z.shape)
    ring_mean = vals @ wth / TWO_PI
    return float(np.sum(wr * ring_density * ring_mean))
