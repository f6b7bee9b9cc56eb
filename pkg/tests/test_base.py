import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewtorus.base import (
    GOLDEN_MEAN,
    BasePoint,
    CircleRotation,
    RandomShift,
    WindowOverflowError,
)


def test_rotation_single_step():
    sys = CircleRotation(0.25)
    p = sys.point(0.9)
    assert sys.angle(sys.advance(p, 1)) == pytest.approx(0.15, abs=1e-15)


def test_advance_zero_steps_identity():
    sys = CircleRotation(0.25)
    p = sys.point(0.37)
    assert sys.advance(p, 0) == p


def test_golden_two_steps():
    sys = CircleRotation(GOLDEN_MEAN)
    p = sys.point(0.0)
    expected = (2.0 * GOLDEN_MEAN) % 1.0
    assert sys.angle(sys.advance(p, 2)) == pytest.approx(expected, abs=1e-15)
    assert expected == pytest.approx(0.2360679774997896, abs=1e-12)


def test_orbit_trivial_and_period_two():
    sys = CircleRotation(0.5)
    p = sys.point(0.0)
    assert [sys.angle(q) for q in sys.orbit(p, 0, 0)] == [0.0]
    angles = [sys.angle(q) for q in sys.orbit(p, 1, 1)]
    assert angles == pytest.approx([0.5, 0.0, 0.5])


def test_orbit_matches_single_steps(shift_base):
    p = shift_base.point(0)
    orb = shift_base.orbit(p, 3, 3)
    assert [q.steps for q in orb] == list(range(-3, 4))
    for k, q in zip(range(-3, 4), orb):
        assert q == shift_base.advance(p, k)


@given(anchor=st.floats(0.0, 1.0, exclude_max=True),
       k=st.integers(-10**6, 10**6))
@settings(max_examples=200)
def test_advance_exactly_invertible(anchor, k):
    sys = CircleRotation(GOLDEN_MEAN)
    p = sys.point(anchor)
    assert sys.advance(sys.advance(p, k), -k) == p


@given(k=st.integers(-10**4, 10**4))
@settings(max_examples=100)
def test_fused_advance_single_reduction(k):
    sys = CircleRotation(GOLDEN_MEAN)
    p = sys.point(0.3)
    assert sys.angle(sys.advance(p, k)) == (0.3 + k * GOLDEN_MEAN) % 1.0


def test_angle_always_reduced():
    sys = CircleRotation(GOLDEN_MEAN)
    p = sys.point(0.999)
    for k in range(-50, 51):
        a = sys.angle(sys.advance(p, k))
        assert 0.0 <= a < 1.0


def test_random_shift_reproducible():
    a = RandomShift(seed=7, n_max=100, alphabet_size=3)
    b = RandomShift(seed=7, n_max=100, alphabet_size=3)
    assert np.array_equal(a.symbols, b.symbols)
    c = RandomShift(seed=8, n_max=100, alphabet_size=3)
    assert not np.array_equal(a.symbols, c.symbols)
    assert a.symbols.min() >= 0 and a.symbols.max() < 3


def test_random_shift_window_overflow():
    sys = RandomShift(seed=1, n_max=10)
    p = sys.point(8)
    with pytest.raises(WindowOverflowError):
        sys.advance(p, 5)
    with pytest.raises(WindowOverflowError):
        sys.point(11)
    with pytest.raises(WindowOverflowError):
        sys.orbit(p, 0, 3)
    # staying inside is fine
    assert sys.advance(p, 2).steps == 10


def test_rotation_orbit_never_revisits():
    sys = CircleRotation(GOLDEN_MEAN)
    p = sys.point(0.0)
    seen = {sys.angle(q) for q in sys.orbit(p, 0, 2000)}
    assert len(seen) == 2001


def test_negative_orbit_extents_rejected():
    sys = CircleRotation(0.25)
    with pytest.raises(ValueError):
        sys.orbit(sys.point(0.0), -1, 0)
