"""Compiled kernels for orbit-length numerics.

Every kernel receives the base/cocycle pair in lowered form:

  bk          0 = circle rotation, 1 = symbol shift
  rho         rotation increment (0.0 for shifts)
  anchor      anchor angle of the starting point (rotation only)
  steps0      integer step offset of the starting point (shift index)
  symbols     int64 symbol window, centred at n_max (length-1 dummy for rotations)
  n_max       half-width of the symbol window (0 for rotations)
  ck          0 = scaled rotation diag(c^-1/2, c^1/2) R(2 pi theta),
              1 = constant rotation R(angle), 2 = per-symbol matrix list
  cp          c (ck=0) or angle in radians (ck=1); unused for ck=2
  mats        (n,2,2) float64 matrix table for ck=2 (dummy (1,2,2) otherwise)

Offsets k inside a kernel are relative to the lowered starting point, so
the matrix at offset k is the cocycle evaluated at gamma^k of that point.
The radial map is h(x) = kappa * atan(x); generic h lives in Python code.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

__all__ = [
    "mat_product",
    "push_direction",
    "pullback_point",
    "pullback_field",
    "planar_iterate",
    "planar_cesaro",
]


@njit(inline="always")
def _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats, k):
    if ck == 1:
        ca = math.cos(cp)
        sa = math.sin(cp)
        return ca, -sa, sa, ca
    if ck == 2:
        s = symbols[steps0 + k + n_max]
        return mats[s, 0, 0], mats[s, 0, 1], mats[s, 1, 0], mats[s, 1, 1]
    th = anchor + (steps0 + k) * rho
    th -= math.floor(th)
    c2 = math.cos(2.0 * math.pi * th)
    s2 = math.sin(2.0 * math.pi * th)
    rc = 1.0 / math.sqrt(cp)
    sc = math.sqrt(cp)
    return rc * c2, rc * s2, -sc * s2, sc * c2


@njit(cache=True)
def mat_product(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats, n, invert):
    """Ordered n-step cocycle product with per-step max-entry renormalisation.

    invert=False: A(gamma^{n-1}) ... A(gamma^0), left-multiplying new factors.
    invert=True:  A(gamma^{-n})^-1 ... A(gamma^{-1})^-1 (the inverse cocycle).
    Returns (m00, m01, m10, m11, log_scale).
    """
    m00 = 1.0
    m01 = 0.0
    m10 = 0.0
    m11 = 1.0
    logs = 0.0
    for i in range(n):
        if invert:
            a, b, c, d = _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats, -(i + 1))
            a, b, c, d = d, -b, -c, a
        else:
            a, b, c, d = _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats, i)
        n00 = a * m00 + b * m10
        n01 = a * m01 + b * m11
        n10 = c * m00 + d * m10
        n11 = c * m01 + d * m11
        s = max(max(abs(n00), abs(n01)), max(abs(n10), abs(n11)))
        m00 = n00 / s
        m01 = n01 / s
        m10 = n10 / s
        m11 = n11 / s
        logs += math.log(s)
    return m00, m01, m10, m11, logs


@njit(cache=True)
def push_direction(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats,
                   start, n, alpha0, backward):
    """Transport the line of angle alpha0 for n steps from orbit offset `start`.

    Forward: applies A at offsets start .. start+n-1, landing at start+n.
    Backward: applies A(offset-1)^-1, stepping down to start-n.
    Returns (alpha_end in [0,1), mean log growth per step).
    """
    ux = math.cos(math.pi * alpha0)
    uy = math.sin(math.pi * alpha0)
    acc = 0.0
    for i in range(n):
        if backward:
            a, b, c, d = _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats,
                                  start - 1 - i)
            a, b, c, d = d, -b, -c, a
        else:
            a, b, c, d = _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats,
                                  start + i)
        wx = a * ux + b * uy
        wy = c * ux + d * uy
        s = math.sqrt(wx * wx + wy * wy)
        ux = wx / s
        uy = wy / s
        acc += math.log(s)
    alpha = math.atan2(uy, ux) / math.pi
    alpha -= math.floor(alpha)
    return alpha, acc / n


@njit(cache=True)
def pullback_point(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats,
                   beta, kappa, r_start, alpha, depth):
    """Radial pullback value at (point, alpha): depth fibre steps from r_start
    applied along the backward projective orbit.

    The backward pass records Omega along the orbit via the identity
    ||A v(alpha_{-m})|| = 1 / ||A^{-1} v(alpha_{-(m-1)})||.
    """
    om = np.empty(depth)
    ux = math.cos(math.pi * alpha)
    uy = math.sin(math.pi * alpha)
    for m in range(1, depth + 1):
        a, b, c, d = _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats, -m)
        wx = d * ux - b * uy
        wy = -c * ux + a * uy
        s = math.sqrt(wx * wx + wy * wy)
        om[m - 1] = 1.0 / s
        ux = wx / s
        uy = wy / s
    r = r_start
    for m in range(depth, 0, -1):
        r = kappa * math.atan(beta * r) * om[m - 1]
    return r


@njit(cache=True, parallel=True)
def pullback_field(bk, rho, anchors, srows, symbols, n_max, ck, cp, mats,
                   beta, kappa, r_start, alpha_res, depth,
                   deposit, seed_alpha):
    """Pullback field over the cell-centre grid, parallel over theta rows.

    Row i starts at (anchors[i], srows[i]) -- cell-centre angles for
    rotations, window indices for shifts. With deposit=True each row
    additionally pulls one generic line forward from the bottom of the
    orbit (it converges onto the expanding direction) and max-deposits the
    resulting radius into the alpha cell it lands in, so the cell
    containing the invariant graph reports the graph value rather than the
    off-graph decay.
    """
    theta_res = len(anchors)
    out = np.zeros((theta_res, alpha_res))
    for i in prange(theta_res):
        anchor = anchors[i]
        steps0 = srows[i]
        inv = np.empty((depth, 4))
        for m in range(1, depth + 1):
            a, b, c, d = _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats, -m)
            inv[m - 1, 0] = d
            inv[m - 1, 1] = -b
            inv[m - 1, 2] = -c
            inv[m - 1, 3] = a
        om = np.empty(depth)
        for j in range(alpha_res):
            alpha = (j + 0.5) / alpha_res
            ux = math.cos(math.pi * alpha)
            uy = math.sin(math.pi * alpha)
            for m in range(1, depth + 1):
                wx = inv[m - 1, 0] * ux + inv[m - 1, 1] * uy
                wy = inv[m - 1, 2] * ux + inv[m - 1, 3] * uy
                s = math.sqrt(wx * wx + wy * wy)
                om[m - 1] = 1.0 / s
                ux = wx / s
                uy = wy / s
            r = r_start
            for m in range(depth, 0, -1):
                r = kappa * math.atan(beta * r) * om[m - 1]
            out[i, j] = r
        if deposit:
            ux = math.cos(math.pi * seed_alpha)
            uy = math.sin(math.pi * seed_alpha)
            r = r_start
            for m in range(depth, 0, -1):
                a = inv[m - 1, 3]
                b = -inv[m - 1, 1]
                c = -inv[m - 1, 2]
                d = inv[m - 1, 0]
                wx = a * ux + b * uy
                wy = c * ux + d * uy
                s = math.sqrt(wx * wx + wy * wy)
                r = kappa * math.atan(beta * r) * s
                ux = wx / s
                uy = wy / s
            ag = math.atan2(uy, ux) / math.pi
            ag -= math.floor(ag)
            jg = int(ag * alpha_res)
            if jg >= alpha_res:
                jg = alpha_res - 1
            if r > out[i, jg]:
                out[i, jg] = r
    return out


@njit(cache=True)
def planar_iterate(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats,
                   beta, kappa, x, y, n):
    """n steps of the planar fibre map v -> h(beta |v|) A v / |v|, h = kappa atan."""
    for k in range(n):
        r = math.sqrt(x * x + y * y)
        if r == 0.0:
            return 0.0, 0.0
        a, b, c, d = _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats, k)
        h = kappa * math.atan(beta * r)
        ux = x / r
        uy = y / r
        x = h * (a * ux + b * uy)
        y = h * (c * ux + d * uy)
    return x, y


@njit(cache=True)
def planar_cesaro(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats,
                  beta, kappa, x, y, n):
    """(1/n) sum_{i<n} ||f^i(v)||, the i=0 term included."""
    acc = 0.0
    for k in range(n):
        r = math.sqrt(x * x + y * y)
        acc += r
        if r == 0.0:
            return acc / n
        a, b, c, d = _entries(bk, rho, anchor, steps0, symbols, n_max, ck, cp, mats, k)
        h = kappa * math.atan(beta * r)
        ux = x / r
        uy = y / r
        x = h * (a * ux + b * uy)
        y = h * (c * ux + d * uy)
    return acc / n
