"""The induced double skew product in projective polar coordinates.

Lines through the origin are parameterised by alpha in [0,1) with unit
vector v(alpha) = (cos pi alpha, sin pi alpha) -- the half-turn convention,
period 1. The planar map factors through (theta, alpha, r) ->
(gamma theta, g_theta(alpha), h(beta r) Omega(theta, alpha)) with
Omega = ||A(theta) v(alpha)||. The original-plane parameterisation uses
full-turn angles; the two are linked by doubled_angle below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import cocycle as _cocycle
from .base import BasePoint
from .model import d2_check, radial_bound

__all__ = [
    "project",
    "proj_vector",
    "proj_distance",
    "doubled_angle",
    "PolarState",
    "PolarSystem",
]


def project(v) -> float:
    """Projective angle of a nonzero vector: atan2-based, p(v) = p(-v) in [0,1)."""
    x, y = float(v[0]), float(v[1])
    if x == 0.0 and y == 0.0:
        raise ValueError("cannot project the zero vector")
    return (math.atan2(y, x) / math.pi) % 1.0


def proj_vector(alpha: float) -> np.ndarray:
    """Unit vector (cos pi alpha, sin pi alpha) spanning the line of angle alpha."""
    return np.array([math.cos(math.pi * alpha), math.sin(math.pi * alpha)])


def proj_distance(a: float, b: float) -> float:
    """Distance on the projective circle R/Z."""
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def doubled_angle(alpha_plane: float) -> float:
    """Half-turn coordinate of a full-turn plane angle: the original-plane
    radius at alpha_plane equals the polar field at 2*alpha_plane mod 1.
    The single place the two conventions are converted."""
    return (2.0 * alpha_plane) % 1.0


@dataclass(frozen=True)
class PolarState:
    point: BasePoint
    alpha: float
    r: float


@dataclass(frozen=True)
class PolarSystem:
    """Double skew product over (base point, projective angle) with concave
    radial fibre maps r -> h(beta r) Omega(theta, alpha)."""

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

    def r_top(self) -> float:
        return radial_bound(self.h, self.cocycle)

    def _matrix(self, p: BasePoint) -> np.ndarray:
        return _cocycle.matrix(self.cocycle, self.base, p)

    def g(self, p: BasePoint, alpha: float) -> tuple[BasePoint, float]:
        """Projective base step: (gamma p, angle of A(p) v(alpha)).

        Computed from the image vector with a quadrant-aware arctangent,
        which is continuous where the tan-quotient form has removable
        singularities.
        """
        w = self._matrix(p) @ proj_vector(alpha)
        return self.base.advance(p, 1), project(w)

    def g_inverse(self, p: BasePoint, alpha: float) -> tuple[BasePoint, float]:
        """Inverse projective step via A(gamma^-1 p)^-1."""
        q = self.base.advance(p, -1)
        a = self._matrix(q)
        inv = np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])
        return q, project(inv @ proj_vector(alpha))

    def omega(self, p: BasePoint, alpha: float) -> float:
        """Radial stretch Omega(p, alpha) = ||A(p) v(alpha)||."""
        w = self._matrix(p) @ proj_vector(alpha)
        return float(np.hypot(w[0], w[1]))

    def omega_product(self, p: BasePoint, alpha: float, n: int) -> float:
        """Product of Omega along the g-orbit, accumulated in log space;
        equals ||A_n(p) v(alpha)|| by the cocycle norm identity."""
        if n < 1:
            raise ValueError("n must be >= 1")
        acc = 0.0
        for _ in range(n):
            acc += math.log(self.omega(p, alpha))
            p, alpha = self.g(p, alpha)
        return math.exp(acc)

    def fibre(self, p: BasePoint, alpha: float, r: float) -> float:
        """Radial fibre map h(beta r) Omega(p, alpha); strictly increasing
        and strictly concave in r, increasing in beta."""
        if r < 0.0:
            raise ValueError("radius must be nonnegative")
        return self.h(self.beta * r) * self.omega(p, alpha)

    def fibre_derivative(self, p: BasePoint, alpha: float, r: float) -> float:
        """Analytic d/dr of the fibre map: beta h'(beta r) Omega(p, alpha)."""
        if r < 0.0:
            raise ValueError("radius must be nonnegative")
        return self.beta * self.h.derivative(self.beta * r) * self.omega(p, alpha)

    def flow(self, p: BasePoint, alpha: float, r: float, n: int) -> PolarState:
        """n forward steps of the double skew product. The (point, alpha)
        component never reads r."""
        if n < 0:
            raise ValueError("radial dynamics iterate forward only")
        if r < 0.0:
            raise ValueError("radius must be nonnegative")
        for _ in range(n):
            # one matrix-vector product per step serves both Omega and g
            w = self._matrix(p) @ proj_vector(alpha)
            r = self.h(self.beta * r) * float(np.hypot(w[0], w[1]))
            p = self.base.advance(p, 1)
            alpha = project(w)
        return PolarState(p, alpha, r)
