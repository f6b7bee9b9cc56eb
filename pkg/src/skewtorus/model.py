"""The planar forced system, the radial profile h, and critical parameters.

Fibre maps act as v -> h(beta ||v||) A(theta) v/||v|| (zero at the origin),
so they carry lines through the origin to lines and are odd. The profile h
must be strictly increasing, strictly concave, bounded and vanish at 0;
d2_check verifies this on samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import cocycle as _cocycle
from .base import BasePoint

__all__ = [
    "ArctanH",
    "CustomH",
    "D2Report",
    "d2_check",
    "radial_bound",
    "critical_betas",
    "ModelSystem",
    "section7_h",
]


@dataclass(frozen=True)
class ArctanH:
    """h(x) = kappa * arctan(x); bounded by kappa*pi/2, slope kappa at 0."""

    kappa: float = 1.0

    def __post_init__(self):
        if self.kappa <= 0.0:
            raise ValueError("kappa must be positive")

    def __call__(self, x: float) -> float:
        return self.kappa * math.atan(x)

    def derivative(self, x: float) -> float:
        return self.kappa / (1.0 + x * x)

    @property
    def sup(self) -> float:
        return self.kappa * math.pi / 2.0

    @property
    def slope0(self) -> float:
        return self.kappa


@dataclass(frozen=True)
class CustomH:
    """User-supplied profile with declared bound and declared slope at 0."""

    fn: Callable[[float], float]
    dfn: Callable[[float], float]
    sup: float
    slope0: float

    def __call__(self, x: float) -> float:
        return self.fn(x)

    def derivative(self, x: float) -> float:
        return self.dfn(x)


def section7_h() -> ArctanH:
    """The arctan profile paired with the c=1/2 scaled-rotation cocycle:
    kappa = 1/(3 sqrt 2), the unique slope reproducing the critical pair (4, 4.5)."""
    return ArctanH(kappa=1.0 / (3.0 * math.sqrt(2.0)))


@dataclass(frozen=True)
class D2Report:
    zero_at_origin: bool
    increasing: bool
    concave: bool
    bounded: bool
    slope_matches: bool
    slope_estimate: float

    @property
    def passed(self) -> bool:
        return (self.zero_at_origin and self.increasing and self.concave
                and self.bounded and self.slope_matches)


def d2_check(h, samples: int = 256, x_max: float = 50.0, slope_tol: float = 1e-6) -> D2Report:
    """Sample-verify the radial profile contract.

    Checks h(0)=0, strict monotonicity and concavity on a graded grid,
    boundedness by the declared sup, and the declared slope at 0 against a
    second-order one-sided difference.
    """
    if samples < 3:
        raise ValueError("need at least 3 samples")
    xs = np.concatenate([
        np.linspace(0.0, 1.0, samples // 2, endpoint=False),
        np.geomspace(1.0, x_max, samples - samples // 2),
    ])
    ys = np.array([h(float(x)) for x in xs])
    zero_at_origin = abs(h(0.0)) <= 1e-15
    increasing = bool(np.all(np.diff(ys) > 0.0))
    # graded grid: concavity through decreasing divided differences
    d1 = np.diff(ys) / np.diff(xs)
    concave = bool(np.all(np.diff(d1) <= 1e-12))
    bounded = bool(np.all(ys <= h.sup + 1e-12)) and np.isfinite(h.sup)
    delta = 1e-6
    slope_estimate = (4.0 * h(delta) - h(2.0 * delta)) / (2.0 * delta)
    slope_matches = abs(slope_estimate - h.slope0) <= slope_tol
    return D2Report(zero_at_origin, increasing, concave, bounded,
                    slope_matches, slope_estimate)


def radial_bound(h, cocycle) -> float:
    """Invariant radial bound: 1 when sup_h * max||A|| <= 1 (the scaled
    regime, where the closed unit disk absorbs every fibre image), else the
    product itself."""
    m = h.sup * cocycle.max_norm()
    return 1.0 if m <= 1.0 else float(m)


def critical_betas(h, lam: float) -> tuple[float, float]:
    """Critical parameter pair (e^-lam / h'(0), e^+lam / h'(0)).

    Reduces to (e^-lam, e^+lam) for slope-1 profiles; the slope
    normalisation absorbs profiles like kappa*arctan with kappa != 1.
    """
    if lam < 0.0:
        raise ValueError("the maximal exponent is nonnegative")
    if h.slope0 <= 0.0:
        raise ValueError("h'(0) must be positive")
    return math.exp(-lam) / h.slope0, math.exp(lam) / h.slope0


def _as_vec(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (2,):
        raise ValueError(f"expected a planar vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    return v


@dataclass(frozen=True)
class ModelSystem:
    """The forced planar system (theta, v) -> (gamma theta, h(beta|v|) A v/|v|)."""

    base: object
    cocycle: object
    h: object
    beta: float
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.beta <= 0.0:
            raise ValueError("beta must be positive")
        if self.validate and not d2_check(self.h).passed:
            raise ValueError("h fails the radial profile contract; "
                             "pass validate=False for deliberate stubs")

    def fibre_map(self, p: BasePoint, v) -> np.ndarray:
        v = _as_vec(v)
        r = float(np.hypot(v[0], v[1]))
        if r == 0.0:
            return np.zeros(2)
        a = _cocycle.matrix(self.cocycle, self.base, p)
        return (self.h(self.beta * r) / r) * (a @ v)

    def iterate(self, p: BasePoint, v, n: int) -> tuple[BasePoint, np.ndarray]:
        """n-fold fibre composition; returns the transported base point too."""
        if n < 0:
            raise ValueError("forward iteration only")
        v = _as_vec(v)
        for _ in range(n):
            v = self.fibre_map(p, v)
            p = self.base.advance(p, 1)
        return p, v

    def r_top(self) -> float:
        return radial_bound(self.h, self.cocycle)
