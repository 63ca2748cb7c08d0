"""Two-dimensional quadrature helpers.

All integrands are vectorized callables taking a complex array of points
z = x + i*y and returning an array of values.  Planar integrals are done
with tensor Gauss-Legendre rules; point singularities (log or |z|^-a with
a < 2) are handled by polar coordinates with dyadic radial refinement
toward the singular point, and generic integrands by dyadic cell
subdivision driven by a two-order error estimate.
"""

from __future__ import annotations

import heapq
from functools import lru_cache

import numpy as np

__all__ = [
    "gauss_legendre",
    "quad_box",
    "adaptive_quad_box",
    "quad_disk",
    "quad_annulus",
    "quad_segment",
    "quad_segment_dyadic",
]


@lru_cache(maxsize=None)
def gauss_legendre(n: int):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _map_nodes(a: float, b: float, n: int):
    x, w = gauss_legendre(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def quad_segment(f, a: float, b: float, n: int = 32):
    """Integrate a vectorized real function on [a, b] with one GL rule."""
    x, w = _map_nodes(a, b, n)
    return float(np.sum(w * f(x)))


def quad_segment_dyadic(f, a: float, b: float, n: int = 16, levels: int = 40,
                        tol: float = 1e-14):
    """Integrate f on (a, b] with geometric refinement toward the endpoint a.

    Splits (a, b] into segments (a + (b-a) 2^-k-1, a + (b-a) 2^-k] and applies
    a GL rule on each; suited to integrable endpoint singularities
    (r^-c with c < 1, or log).  Stops once a segment contributes < tol.
    """
    total = 0.0
    width = b - a
    for k in range(levels):
        hi = a + width * 2.0 ** (-k)
        lo = a + width * 2.0 ** (-k - 1)
        x, w = _map_nodes(lo, hi, n)
        part = float(np.sum(w * f(x)))
        total += part
        if k > 4 and abs(part) < tol * max(1.0, abs(total)):
            break
    return total


def quad_box(f, box, n: int = 24):
    """Tensor Gauss-Legendre integral of f over box = (x0, x1, y0, y1)."""
    x0, x1, y0, y1 = box
    xs, wx = _map_nodes(x0, x1, n)
    ys, wy = _map_nodes(y0, y1, n)
    Z = xs[:, None] + 1j * ys[None, :]
    W = wx[:, None] * wy[None, :]
    return complex(np.sum(W * f(Z.ravel()).reshape(Z.shape)))


def _box_rule(f, box, n):
    v = quad_box(f, box, n)
    return v


def adaptive_quad_box(f, box, tol: float = 1e-8, order: int = 12,
                      max_cells: int = 4000, singular_points=()):
    """Adaptive dyadic tensor-GL integral of f over a rectangle.

    box = (x0, x1, y0, y1).  Cells are split at the worst two-order error
    estimate; optional singular_points seed an initial subdivision so each
    listed point sits on cell corners (point singularities then converge
    geometrically under refinement).  Raises RuntimeError when the cell
    budget is exhausted with the error estimate above tol.
    """
    x0, x1, y0, y1 = box
    xcuts = sorted({x0, x1, *(float(np.real(p)) for p in singular_points
                              if x0 < np.real(p) < x1)})
    ycuts = sorted({y0, y1, *(float(np.imag(p)) for p in singular_points
                              if y0 < np.imag(p) < y1)})
    cells = []
    counter = 0
    for i in range(len(xcuts) - 1):
        for j in range(len(ycuts) - 1):
            b = (xcuts[i], xcuts[i + 1], ycuts[j], ycuts[j + 1])
            coarse = _box_rule(f, b, order)
            fine = _box_rule(f, b, 2 * order)
            heapq.heappush(cells, (-abs(fine - coarse), counter, b, fine))
            counter += 1
    total_err = sum(-c[0] for c in cells)
    while total_err > tol and len(cells) < max_cells:
        neg_err, _, b, _ = heapq.heappop(cells)
        total_err += neg_err
        bx0, bx1, by0, by1 = b
        xm, ym = 0.5 * (bx0 + bx1), 0.5 * (by0 + by1)
        for sub in ((bx0, xm, by0, ym), (xm, bx1, by0, ym),
                    (bx0, xm, ym, by1), (xm, bx1, ym, by1)):
            coarse = _box_rule(f, sub, order)
            fine = _box_rule(f, sub, 2 * order)
            err = abs(fine - coarse)
            heapq.heappush(cells, (-err, counter, sub, fine))
            counter += 1
            total_err += err
    if total_err > tol:
        raise RuntimeError(
            f"adaptive quadrature did not reach tol={tol:g} "
            f"(err={total_err:g}, cells={len(cells)})")
    return complex(sum(c[3] for c in cells))


def quad_disk(f, center: complex, radius: float, n_theta: int = 64,
              n_r: int = 12, levels: int = 48, tol: float = 1e-13):
    """Integral of f over the disk B(center, radius) in polar coordinates.

    The radial direction is refined dyadically toward the center, so point
    singularities f ~ |z - center|^-a with a < 2 (log included) are
    integrated accurately.  The integrand only ever sees points with
    r > 0, never the singular center itself.
    """
    th, wth = _map_nodes(0.0, 2.0 * np.pi, n_theta)
    e = np.exp(1j * th)
    total = 0.0 + 0.0j
    for k in range(levels):
        hi = radius * 2.0 ** (-k)
        lo = radius * 2.0 ** (-k - 1)
        r, wr = _map_nodes(lo, hi, n_r)
        Z = center + r[:, None] * e[None, :]
        W = (r * wr)[:, None] * wth[None, :]
        part = complex(np.sum(W * f(Z.ravel()).reshape(Z.shape)))
        total += part
        if k > 6 and abs(part) < tol * max(1.0, abs(total)):
            break
    return complex(total)


def quad_annulus(f, center: complex, r0: float, r1: float,
                 n_theta: int = 64, n_r: int = 32, theta_range=None):
    """Integral of f over {r0 < |z - center| < r1}, optionally a sector.

    theta_range = (theta_lo, theta_hi) restricts the angular interval.
    Radial nodes are placed on a log-scale composite rule so inverse-power
    radial behavior is resolved.
    """
    lo, hi = theta_range if theta_range is not None else (0.0, 2.0 * np.pi)
    th, wth = _map_nodes(lo, hi, n_theta)
    e = np.exp(1j * th)
    edges = np.geomspace(r0, r1, max(2, n_r // 8 + 1))
    total = 0.0 + 0.0j
    for a, b in zip(edges[:-1], edges[1:]):
        r, wr = _map_nodes(a, b, 8)
        Z = center + r[:, None] * e[None, :]
        W = (r * wr)[:, None] * wth[None, :]
        total += complex(np.sum(W * f(Z.ravel()).reshape(Z.shape)))
    return complex(total)
