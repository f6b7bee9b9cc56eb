"""SL(2,R)-valued cocycles over the base: matrices, ordered products,
maximal Lyapunov exponent, expanding/contracting direction extraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .base import BasePoint, CircleRotation, RandomShift, WindowOverflowError

__all__ = [
    "SL2_DET_TOL",
    "SEED_ANGLE",
    "require_sl2",
    "ScaledRotationCocycle",
    "ConstantRotationCocycle",
    "MatrixListCocycle",
    "LogProduct",
    "DirectionEstimate",
    "matrix",
    "product",
    "lyapunov_max",
    "unstable_direction",
    "stable_direction",
]

SL2_DET_TOL = 1e-12

# Generic line used to seed projective iterations. Fixed for reproducibility;
# the reliability flag covers the probability-zero coincidence with the
# contracting graph.
SEED_ANGLE = 0.123456

_DUMMY_SYMBOLS = np.zeros(1, dtype=np.int64)
_DUMMY_MATS = np.zeros((1, 2, 2), dtype=np.float64)


def require_sl2(m: np.ndarray, tol: float = SL2_DET_TOL) -> np.ndarray:
    """Validate a 2x2 matrix as a member of SL(2,R) within tol."""
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det - 1.0) > tol:
        raise ValueError(f"determinant {det!r} differs from 1 by more than {tol}")
    return m


@dataclass(frozen=True)
class ScaledRotationCocycle:
    """A(theta) = diag(c^-1/2, c^1/2) R(2 pi theta): rotate by the base angle,
    then stretch the axes by c^-1/2 and c^1/2. Needs an angular base."""

    c: float = 0.5

    def __post_init__(self):
        if self.c <= 0.0:
            raise ValueError("c must be positive")

    def matrix_at_angle(self, theta: float) -> np.ndarray:
        rc = 1.0 / math.sqrt(self.c)
        sc = math.sqrt(self.c)
        t = 2.0 * math.pi * theta
        ct, st = math.cos(t), math.sin(t)
        return np.array([[rc * ct, rc * st], [-sc * st, sc * ct]])

    def matrix(self, base, p: BasePoint) -> np.ndarray:
        if not isinstance(base, CircleRotation):
            raise TypeError("ScaledRotationCocycle needs an angular base")
        return self.matrix_at_angle(base.angle(p))

    def max_norm(self) -> float:
        return max(math.sqrt(self.c), 1.0 / math.sqrt(self.c))

    def _lower(self):
        return 0, self.c, _DUMMY_MATS


@dataclass(frozen=True)
class ConstantRotationCocycle:
    """Constant counterclockwise rotation R(angle); an isometry, so the
    exponent is zero and the projective action shifts alpha by angle/pi."""

    angle: float = 0.0

    def matrix(self, base=None, p: BasePoint | None = None) -> np.ndarray:
        ca, sa = math.cos(self.angle), math.sin(self.angle)
        return np.array([[ca, -sa], [sa, ca]])

    def max_norm(self) -> float:
        return 1.0

    def _lower(self):
        return 1, self.angle, _DUMMY_MATS


class MatrixListCocycle:
    """One SL(2,R) matrix per shift symbol; needs a RandomShift base."""

    def __init__(self, matrices):
        mats = np.array(matrices, dtype=float)
        if mats.ndim != 3 or mats.shape[1:] != (2, 2):
            raise ValueError("matrices must have shape (n, 2, 2)")
        for m in mats:
            require_sl2(m)
        self.matrices = mats
        self.matrices.setflags(write=False)

    def __repr__(self) -> str:
        return f"MatrixListCocycle(n={len(self.matrices)})"

    def matrix(self, base, p: BasePoint) -> np.ndarray:
        if not isinstance(base, RandomShift):
            raise TypeError("MatrixListCocycle needs a RandomShift base point")
        if len(self.matrices) != base.alphabet_size:
            raise ValueError(
                f"matrix list length {len(self.matrices)} != alphabet size {base.alphabet_size}"
            )
        return self.matrices[base.symbol(p)].copy()

    def max_norm(self) -> float:
        return max(float(np.linalg.norm(m, 2)) for m in self.matrices)

    def _lower(self):
        return 2, 0.0, self.matrices


def _lower(spec, base, p: BasePoint):
    """Kernel argument tuple for (spec, base, starting point)."""
    ck, cp, mats = spec._lower()
    if isinstance(base, CircleRotation):
        if ck == 2:
            raise TypeError("MatrixListCocycle needs a RandomShift base")
        return (0, base.rho, p.anchor, p.steps, _DUMMY_SYMBOLS, 0, ck, cp, mats)
    if isinstance(base, RandomShift):
        if ck == 0:
            raise TypeError("ScaledRotationCocycle needs an angular base")
        if ck == 2 and len(mats) != base.alphabet_size:
            raise ValueError(
                f"matrix list length {len(mats)} != alphabet size {base.alphabet_size}"
            )
        return (1, 0.0, 0.0, p.steps, base.symbols, base.n_max, ck, cp, mats)
    raise TypeError(f"unsupported base {type(base).__name__}")


def _check_window(base, p: BasePoint, lo: int, hi: int) -> None:
    """Ensure orbit offsets [lo, hi] relative to p stay inside the window."""
    if isinstance(base, RandomShift):
        if p.steps + lo < -base.n_max or p.steps + hi > base.n_max:
            raise WindowOverflowError(
                f"orbit offsets [{lo}, {hi}] from index {p.steps} leave the window"
            )


@dataclass(frozen=True)
class LogProduct:
    """Ordered cocycle product, renormalised: exp(log_scale) * normalized."""

    normalized: np.ndarray
    log_scale: float

    def full(self) -> np.ndarray:
        return math.exp(self.log_scale) * self.normalized

    def norm_log(self) -> float:
        """log of the spectral norm of the represented product."""
        return self.log_scale + math.log(np.linalg.norm(self.normalized, 2))


@dataclass(frozen=True)
class DirectionEstimate:
    """Projective angle estimate with its measured growth rate.

    reliable is False when the mean log growth sits inside the 3/sqrt(n)
    diffusive band of a zero-exponent cocycle.
    """

    alpha: float
    growth: float
    reliable: bool


def matrix(spec, base, p: BasePoint) -> np.ndarray:
    """Cocycle matrix at p; always SL(2,R) within SL2_DET_TOL."""
    return require_sl2(spec.matrix(base, p))


def product(spec, base, p: BasePoint, n: int) -> LogProduct:
    """n-step ordered product A(gamma^{n-1} p) ... A(p).

    Negative n gives the inverse cocycle A_{-|n|}(p). Renormalises by the
    max-abs entry every step, accumulating the log scale.
    """
    n = int(n)
    if n == 0:
        return LogProduct(np.eye(2), 0.0)
    invert = n < 0
    steps = abs(n)
    _check_window(base, p, -steps if invert else 0, 0 if invert else steps - 1)
    args = _lower(spec, base, p)
    m00, m01, m10, m11, logs = _kernels.mat_product(*args, steps, invert)
    return LogProduct(np.array([[m00, m01], [m10, m11]]), logs)


def lyapunov_max(spec, base, p: BasePoint, n: int) -> float:
    """Finite-n estimate (1/n) log ||A_n(p)|| of the maximal exponent."""
    n = int(n)
    if n == 0:
        raise ValueError("n must be nonzero")
    return product(spec, base, p, n).norm_log() / abs(n)


def _direction(spec, base, p: BasePoint, depth: int, backward: bool,
               seed_angle: float) -> DirectionEstimate:
    depth = int(depth)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if backward:
        _check_window(base, p, 0, depth)
    else:
        _check_window(base, p, -depth, 0)
    args = _lower(spec, base, p)
    start = depth if backward else -depth
    alpha, growth = _kernels.push_direction(*args, start, depth, seed_angle, backward)
    reliable = abs(growth) >= 3.0 / math.sqrt(depth)
    return DirectionEstimate(alpha, growth, reliable)


def unstable_direction(spec, base, p: BasePoint, depth: int,
                       seed_angle: float = SEED_ANGLE) -> DirectionEstimate:
    """Expanding direction at p: forward transport of a generic line from
    gamma^-depth p. Meaningful only when the exponent is positive; the
    reliable flag is cleared in the elliptic-like regime."""
    return _direction(spec, base, p, depth, backward=False, seed_angle=seed_angle)


def stable_direction(spec, base, p: BasePoint, depth: int,
                     seed_angle: float = SEED_ANGLE) -> DirectionEstimate:
    """Contracting direction at p: backward transport from gamma^+depth p
    (the expanding direction of the inverse cocycle)."""
    return _direction(spec, base, p, depth, backward=True, seed_angle=seed_angle)
