"""Covariance of the mollified field at finite separations.

The field regularized at scale eps has covariance

    C_{eps,delta}(x, y) = int rho_eps(a) rho_delta(b) G(x + a, y + b) da db,

which splits into a radial log-energy part plus the exact harmonic part
g(x, y) (mean value property, since both mollifier supports stay inside
the domain).  Three regimes:

  (1) max(eps, delta) < |x - y|/3: equals G(x, y) exactly (returned
      bitwise via the Green's function, no quadrature);
  (2) x == y, eps == delta: (1/2pi) log(1/eps) + c_rho + g(x, x);
  (3) otherwise: the log-energy is a smooth 2-d quadrature over the
      shells of the smaller mollifier against the single-mollified log
      kernel lambda of the larger one.

lambda_eps(d) = log(1/eps) + tail(d/eps) for d < eps and log(1/d)
otherwise; it is C-infinity because the bump vanishes to all orders at
its support edge, so fixed tensor Gauss rules converge fast.
"""

from __future__ import annotations

import numpy as np

from .bumps import Mollifier, std_profile
from .disk import DiskDomain, green, harmonic_part
from .quadrature import gauss_legendre

__all__ = [
    "single_mollified_log",
    "double_mollified_log",
    "c_rho",
    "mollified_cov",
]

TWO_PI = 2.0 * np.pi


def single_mollified_log(eps: float, d):
    """lambda_eps(d) = int rho_eps(a) log|z - a|^{-1} da at |z| = d."""
    d = np.asarray(d, dtype=float)
    prof = std_profile()
    with np.errstate(divide="ignore"):
        outside = -np.log(d)
    inside = np.log(1.0 / eps) + prof.tail(d / eps)
    return np.where(d >= eps, outside, inside)


def double_mollified_log(eps: float, delta: float, d, n_r: int = 40,
                         n_theta: int = 64):
    """int rho_eps(a) rho_delta(b) log|z + a - b|^{-1} da db at |z| = d.

    Shell decomposition of the smaller mollifier against lambda of the
    larger: Lambda(d) = int_0^small m'(r) <lambda_big>_circle(d, r) dr.
    Vectorized over an array of separations d.
    """
    d = np.atleast_1d(np.asarray(d, dtype=float))
    big, small = max(eps, delta), min(eps, delta)
    prof = std_profile()
    rn, rw = gauss_legendre(n_r)
    tn, tw = gauss_legendre(n_theta)
    r = 0.5 * small * (rn + 1.0)
    wr = 0.5 * small * rw
    th = 0.5 * np.pi * (tn + 1.0)  # half circle; integrand symmetric
    wth = 0.5 * np.pi * tw
    u = r / small
    shell = wr * TWO_PI * r * np.exp(-1.0 / (1.0 - u * u)) \
        / (small ** 2 * prof.i0)  # m'_small(r) dr, unit total mass
    dist = np.sqrt(np.maximum(
        d[:, None, None] ** 2 + r[None, :, None] ** 2
        - 2.0 * d[:, None, None] * r[None, :, None]
        * np.cos(th)[None, None, :], 0.0))
    lam = single_mollified_log(big, dist)
    ring_mean = np.einsum("drt,t->dr", lam, wth) / np.pi
    return np.einsum("dr,r->d", ring_mean, shell)


def c_rho(m: Mollifier) -> float:
    """(1/2pi) * int rho(a) rho(b) log|a-b|^{-1}; cached radial closed form."""
    return m.c_rho


def mollified_cov(dom: DiskDomain, m: Mollifier, x, y, eps: float,
                  delta: float):
    """Covariance of the eps- and delta-mollified field at x and y.

    The mollifier support radius multiplies the scales, so a Mollifier of
    radius r at scale eps acts at effective radius r*eps.
    """
    x = complex(x)
    y = complex(y)
    if eps <= 0.0 or delta <= 0.0:
        raise ValueError("mollification scales must be positive")
    eps_eff = eps * m.radius
    delta_eff = delta * m.radius
    for p, s in ((x, eps_eff), (y, delta_eff)):
        if not dom.contains(p, margin=s):
            raise ValueError("mollification support leaves the domain")
    d = abs(x - y)
    if max(eps_eff, delta_eff) < d / 3.0:
        return green(dom, x, y)
    if x == y and eps == delta:
        return (np.log(1.0 / eps) / TWO_PI + m.c_rho
                + harmonic_part(dom, x, x))
    lam = double_mollified_log(eps_eff, delta_eff, d)[0]
    return float(lam / TWO_PI + harmonic_part(dom, x, y))
