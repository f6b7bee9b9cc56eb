"""Invertible driving dynamics on the base space.

Two variants: an irrational circle rotation and a seeded finite-window
symbol shift. Both generate exact bi-directional orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GOLDEN_MEAN",
    "WindowOverflowError",
    "BasePoint",
    "CircleRotation",
    "RandomShift",
]

GOLDEN_MEAN = (math.sqrt(5.0) - 1.0) / 2.0

DEFAULT_WINDOW = 2_000_000


class WindowOverflowError(IndexError):
    """An orbit left the pre-generated symbol window of a RandomShift."""


@dataclass(frozen=True)
class BasePoint:
    """Point on the base, stored as an anchor plus an exact step offset.

    Keeping the offset as an integer makes k-step advances exactly
    invertible; the coordinate is materialised per readout with a single
    mod-1 reduction (rotation) or a window lookup (shift).
    """

    anchor: float = 0.0
    steps: int = 0


@dataclass(frozen=True)
class CircleRotation:
    """Rigid rotation theta -> theta + rho mod 1."""

    rho: float = GOLDEN_MEAN

    def point(self, angle: float = 0.0) -> BasePoint:
        return BasePoint(float(angle) % 1.0, 0)

    def angle(self, p: BasePoint) -> float:
        """Coordinate of p in [0, 1), reduced once: (anchor + steps*rho) mod 1."""
        return (p.anchor + p.steps * self.rho) % 1.0

    def coordinate(self, p: BasePoint) -> float:
        return self.angle(p)

    def advance(self, p: BasePoint, k: int = 1) -> BasePoint:
        return BasePoint(p.anchor, p.steps + int(k))

    def orbit(self, p: BasePoint, n_back: int, n_fwd: int) -> list[BasePoint]:
        """Points advance(p, k) for k in [-n_back, n_fwd], in order."""
        if n_back < 0 or n_fwd < 0:
            raise ValueError("orbit extents must be nonnegative")
        return [self.advance(p, k) for k in range(-n_back, n_fwd + 1)]


class RandomShift:
    """Shift on a seeded symbol sequence over a finite window.

    The whole window [-n_max, n_max] is generated at construction from the
    seed, so orbits are bit-reproducible and direction-symmetric. Points
    are window indices; leaving the window raises WindowOverflowError.
    """

    def __init__(self, seed: int, n_max: int = DEFAULT_WINDOW, alphabet_size: int = 2):
        if n_max < 1:
            raise ValueError("n_max must be >= 1")
        if alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        self.seed = int(seed)
        self.n_max = int(n_max)
        self.alphabet_size = int(alphabet_size)
        rng = np.random.Generator(np.random.PCG64(self.seed))
        self.symbols = rng.integers(0, self.alphabet_size, size=2 * self.n_max + 1, dtype=np.int64)
        self.symbols.setflags(write=False)

    def __repr__(self) -> str:
        return (
            f"RandomShift(seed={self.seed}, n_max={self.n_max}, "
            f"alphabet_size={self.alphabet_size})"
        )

    def point(self, index: int = 0) -> BasePoint:
        self._check(index)
        return BasePoint(0.0, int(index))

    def index(self, p: BasePoint) -> int:
        return p.steps

    def coordinate(self, p: BasePoint) -> int:
        return p.steps

    def symbol(self, p: BasePoint) -> int:
        self._check(p.steps)
        return int(self.symbols[p.steps + self.n_max])

    def advance(self, p: BasePoint, k: int = 1) -> BasePoint:
        target = p.steps + int(k)
        self._check(target)
        return BasePoint(p.anchor, target)

    def orbit(self, p: BasePoint, n_back: int, n_fwd: int) -> list[BasePoint]:
        if n_back < 0 or n_fwd < 0:
            raise ValueError("orbit extents must be nonnegative")
        self._check(p.steps - n_back)
        self._check(p.steps + n_fwd)
        return [self.advance(p, k) for k in range(-n_back, n_fwd + 1)]

    def _check(self, index: int) -> None:
        if abs(index) > self.n_max:
            raise WindowOverflowError(
                f"index {index} outside pre-generated window [-{self.n_max}, {self.n_max}]"
            )
