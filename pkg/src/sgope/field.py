"""Sampling the mollified field at finite node sets and Wick exponentials.

The field is never represented as a function: every verification needs it
only at finitely many points, where its covariance is exact (mollified
covariance), so samples come from a PSD-repaired covariance factorization.

The Wick exponential at scale eps is the renormalized
e^{alpha^2 c_rho / 2} eps^{-alpha^2/(4 pi)} e^{i alpha phi_eps(x)}; its
second moments cancel all scale factors against the covariance diagonal,
leaving only harmonic-part weights, which is what the quadrature oracles
here integrate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bumps import BumpFunction, Mollifier
from .disk import DiskDomain, harmonic_part
from .gaussian import CovMatrix
from .mollified import double_mollified_log, green, single_mollified_log
from .quadrature import gauss_legendre

__all__ = [
    "N_MAX",
    "ALPHA_MAX_SQ",
    "NodeSet",
    "FieldSample",
    "grid_nodes",
    "field_covariance",
    "sample_field",
    "wick_exponential",
    "second_moment_quadrature",
    "l2_cauchy_gap",
]

TWO_PI = 2.0 * np.pi
N_MAX = 4096
ALPHA_MAX_SQ = 4.0 * np.pi


@dataclass(frozen=True)
class NodeSet:
    """Evaluation nodes with a common mollification scale and weights."""

    points: np.ndarray
    eps: float
    weights: np.ndarray | None = None

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=complex))
        object.__setattr__(self, "points", pts)
        if pts.size > N_MAX:
            raise ValueError(f"node count {pts.size} exceeds N_MAX={N_MAX}")
        if self.eps <= 0.0:
            raise ValueError("mollification scale must be positive")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != pts.shape:
                raise ValueError("weights must match points")
            object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class FieldSample:
    """Rows are independent field realizations over the node set."""

    values: np.ndarray
    seed: int
    eps: float


def grid_nodes(f: BumpFunction, n: int = 64, eps: float = 0.05) -> NodeSet:
    """Tensor Gauss grid over the support box of f with product weights."""
    x0, x1, y0, y1 = f.box
    xg, wg = gauss_legendre(n)
    xs = 0.5 * (x1 - x0) * xg + 0.5 * (x0 + x1)
    ys = 0.5 * (y1 - y0) * xg + 0.5 * (y0 + y1)
    wx = 0.5 * (x1 - x0) * wg
    wy = 0.5 * (y1 - y0) * wg
    pts = (xs[:, None] + 1j * ys[None, :]).ravel()
    wts = (wx[:, None] * wy[None, :]).ravel()
    return NodeSet(points=pts, eps=eps, weights=wts)


def field_covariance(dom: DiskDomain, m: Mollifier, nodes: NodeSet) -> CovMatrix:
    """Covariance matrix of the mollified field over the node set.

    Pairs in the far regime get the Green's function bitwise; near pairs
    get the mollified log-energy quadrature; the diagonal is the closed
    form (1/2pi) log(1/eps) + c_rho + g(x, x).
    """
    pts = nodes.points
    eps_eff = nodes.eps * m.radius
    for p in pts:
        if not dom.contains(p, margin=eps_eff):
            raise ValueError("mollification support leaves the domain")
    n = pts.size
    z1 = pts[:, None]
    z2 = pts[None, :]
    dist = np.abs(z1 - z2)
    harm = harmonic_part(dom, z1, z2)
    cov = np.empty((n, n), dtype=float)
    iu = np.triu_indices(n, k=1)
    d_off = dist[iu]
    far = eps_eff < d_off / 3.0
    vals = np.empty_like(d_off)
    if np.any(far):
        xh = dom.map_in(z1 + 0.0 * z2)[iu][far]
        yh = dom.map_in(z2 + 0.0 * z1)[iu][far]
        vals[far] = (np.log(np.abs(1.0 - xh * np.conj(yh)))
                     - np.log(d_off[far] / dom.radius)) / TWO_PI \
            - np.log(dom.radius) / TWO_PI
    if np.any(~far):
        lam = double_mollified_log(eps_eff, eps_eff, d_off[~far])
        vals[~far] = lam / TWO_PI + harm[iu][~far]
    cov[iu] = vals
    cov.T[iu] = vals
    diag = (np.log(1.0 / nodes.eps) / TWO_PI + m.c_rho
            + np.diag(harm.real))
    np.fill_diagonal(cov, diag)
    return CovMatrix(cov)


def sample_field(dom: DiskDomain, m: Mollifier, nodes: NodeSet, seed: int,
                 count: int = 1) -> FieldSample:
    """count independent field realizations, reproducible from seed."""
    cov = field_covariance(dom, m, nodes)
    L = cov.factor()
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    xi = rng.standard_normal((int(count), cov.dim))
    return FieldSample(values=xi @ L.T, seed=int(seed), eps=nodes.eps)


def wick_exponential(sample: FieldSample, alpha: float, f: BumpFunction,
                     quad_nodes: NodeSet, m: Mollifier | None = None):
    """Quadrature of f against the Wick-ordered exponential of the sample.

    Returns one complex value per field realization:
    sum_i w_i f(x_i) e^{alpha^2 c_rho/2} eps^{-alpha^2/4pi} e^{i alpha phi_i}.
    """
    if alpha * alpha >= ALPHA_MAX_SQ:
        raise ValueError("alpha out of the L2 convergence range |alpha| < sqrt(4 pi)")
    if quad_nodes.weights is None:
        raise ValueError("quad_nodes must carry weights")
    if sample.eps != quad_nodes.eps:
        raise ValueError("sample and quadrature nodes disagree on eps")
    c_rho_val = (m or Mollifier()).c_rho
    amp = np.exp(0.5 * alpha * alpha * c_rho_val) \
        * sample.eps ** (-alpha * alpha / (4.0 * np.pi))
    fw = f(quad_nodes.points) * quad_nodes.weights
    vals = np.atleast_2d(sample.values)
    return amp * (np.exp(1j * alpha * vals) @ fw)


def _pair_offset_integral(dom: DiskDomain, fa: BumpFunction,
                          fb: BumpFunction, alpha: float, radial_factor,
                          r_max: float, n_x: int = 32, n_theta: int = 32,
                          n_r: int = 8, levels: int = 60,
                          tol: float = 1e-12) -> float:
    """int dx int dw fa(x) fb(x+w) E(x, x+w) rf(|w|) d^2w, w in polar form.

    E(x, y) = exp(alpha^2 [g(x,y) - g(x,x)/2 - g(y,y)/2]); rf carries the
    radial log-energy factor (and bracket, for the Cauchy gap).  Dyadic
    radial refinement toward w = 0 handles the r^{-alpha^2/2pi} growth.
    """
    x0, x1, y0, y1 = fa.box
    xg, wg = gauss_legendre(n_x)
    xs = 0.5 * (x1 - x0) * xg + 0.5 * (x0 + x1)
    ys = 0.5 * (y1 - y0) * xg + 0.5 * (y0 + y1)
    X = (xs[:, None] + 1j * ys[None, :]).ravel()
    WX = ((0.5 * (x1 - x0) * wg)[:, None]
          * (0.5 * (y1 - y0) * wg)[None, :]).ravel()
    fa_x = fa(X) * WX
    gxx = harmonic_part(dom, X, X).real
    th, wth = gauss_legendre(n_theta)
    theta = np.pi * (th + 1.0)
    wtheta = np.pi * wth
    e_th = np.exp(1j * theta)
    a2 = alpha * alpha
    total = 0.0
    for k in range(levels):
        hi = r_max * 2.0 ** (-k)
        lo = r_max * 2.0 ** (-k - 1)
        rg, rw = gauss_legendre(n_r)
        r = 0.5 * (hi - lo) * rg + 0.5 * (lo + hi)
        wr = 0.5 * (hi - lo) * rw
        rf = radial_factor(r)
        part = 0.0
        for ri, wri, rfi in zip(r, wr, rf):
            if rfi == 0.0:
                continue
            Y = X[:, None] + ri * e_th[None, :]
            inside = np.abs(Y) < dom.radius
            gyy = np.where(inside, harmonic_part(
                dom, Y * inside, Y * inside).real, 0.0)
            gxy = np.where(inside, harmonic_part(
                dom, X[:, None] * np.ones_like(Y), Y * inside).real, 0.0)
            fb_y = np.where(inside, fb(Y), 0.0)
            integ = fb_y * np.exp(a2 * (gxy - 0.5 * gxx[:, None]
                                        - 0.5 * gyy))
            part += wri * ri * rfi * float(fa_x @ integ @ wtheta)
        total += part
        if k > 6 and abs(part) < tol * max(abs(total), 1e-300):
            break
    return total


def second_moment_quadrature(dom: DiskDomain, m: Mollifier,
                             f: BumpFunction, alpha: float,
                             eps: float) -> float:
    """Continuum oracle for E|wick_exponential(f)|^2 at scale eps."""
    eps_eff = eps * m.radius
    a2 = alpha * alpha

    def rf(r):
        return np.exp(a2 * double_mollified_log(eps_eff, eps_eff, r)
                      / TWO_PI)

    return _pair_offset_integral(dom, f, f, alpha, rf, 2.0 * f.radius)


def l2_cauchy_gap(dom: DiskDomain, m: Mollifier, f: BumpFunction,
                  alpha: float, eps: float, delta: float) -> float:
    """E|:e^{i a phi_eps}:(f) - :e^{i a phi_delta}:(f)|^2 by quadrature.

    The three-term covariance bracket vanishes identically for
    |x - y| >= 2 max(eps, delta), so the offset integral is restricted to
    that strip.  Non-negative up to quadrature error.
    """
    if alpha * alpha >= ALPHA_MAX_SQ:
        raise ValueError("alpha out of the L2 convergence range |alpha| < sqrt(4 pi)")
    if eps == delta:
        return 0.0
    eps_eff = eps * m.radius
    delta_eff = delta * m.radius
    a2 = alpha * alpha
    r_cut = 2.0 * max(eps_eff, delta_eff)

    def bracket(r):
        lam_ee = double_mollified_log(eps_eff, eps_eff, r)
        lam_ed = double_mollified_log(eps_eff, delta_eff, r)
        lam_dd = double_mollified_log(delta_eff, delta_eff, r)
        out = (np.exp(a2 * lam_ee / TWO_PI)
               - 2.0 * np.exp(a2 * lam_ed / TWO_PI)
               + np.exp(a2 * lam_dd / TWO_PI))
        return np.where(r >= r_cut, 0.0, out)

    return _pair_offset_integral(dom, f, f, alpha, bracket, r_cut)
