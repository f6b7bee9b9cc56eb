import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewtorus.base import CircleRotation, GOLDEN_MEAN, RandomShift
from skewtorus.cocycle import (
    ConstantRotationCocycle,
    MatrixListCocycle,
    ScaledRotationCocycle,
    lyapunov_max,
    matrix,
    product,
    require_sl2,
    stable_direction,
    unstable_direction,
)
from skewtorus.polar import PolarSystem, proj_distance
from skewtorus.model import section7_h

SQ2 = math.sqrt(2.0)
LAM_EXACT = math.log(3.0 / (2.0 * SQ2))


def test_matrix_at_zero(golden_base, example_cocycle):
    m = matrix(example_cocycle, golden_base, golden_base.point(0.0))
    assert m == pytest.approx(np.diag([SQ2, 1.0 / SQ2]))


def test_constant_rotation_identity(golden_base):
    m = matrix(ConstantRotationCocycle(0.0), golden_base, golden_base.point(0.3))
    assert m == pytest.approx(np.eye(2))


def test_matrix_quarter_turn(golden_base, example_cocycle):
    # diag(sqrt2, 1/sqrt2) times the clockwise quarter rotation
    m = matrix(example_cocycle, golden_base, golden_base.point(0.25))
    assert m == pytest.approx(np.array([[0.0, SQ2], [-1.0 / SQ2, 0.0]]), abs=1e-15)


@given(theta=st.floats(0.0, 1.0, exclude_max=True))
@settings(max_examples=200)
def test_determinant_invariant(theta):
    base = CircleRotation(GOLDEN_MEAN)
    for spec in (ScaledRotationCocycle(0.5), ScaledRotationCocycle(3.7),
                 ConstantRotationCocycle(theta * 6.0)):
        m = matrix(spec, base, base.point(theta))
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        assert abs(det - 1.0) <= 1e-12


def test_require_sl2_rejects():
    with pytest.raises(ValueError):
        require_sl2(np.diag([2.0, 1.0]))
    with pytest.raises(ValueError):
        require_sl2(np.zeros((3, 3)))


def test_product_zero_steps(golden_base, example_cocycle):
    lp = product(example_cocycle, golden_base, golden_base.point(0.1), 0)
    assert lp.log_scale == 0.0
    assert np.array_equal(lp.normalized, np.eye(2))


def test_product_rotations_compose(golden_base):
    phi = 0.7
    lp = product(ConstantRotationCocycle(phi), golden_base, golden_base.point(0.0), 5)
    expect = np.array([[math.cos(5 * phi), -math.sin(5 * phi)],
                       [math.sin(5 * phi), math.cos(5 * phi)]])
    assert lp.full() == pytest.approx(expect, abs=1e-12)
    assert abs(lp.norm_log()) <= 1e-12


def test_product_matches_brute_force(golden_base, example_cocycle):
    p0 = golden_base.point(0.0)
    for n in (3, 17, 50):
        brute = np.eye(2)
        for k in range(n):
            brute = matrix(example_cocycle, golden_base, golden_base.advance(p0, k)) @ brute
        lp = product(example_cocycle, golden_base, p0, n)
        rel = np.linalg.norm(lp.full() - brute) / np.linalg.norm(brute)
        assert rel <= 1e-10


def test_product_cocycle_property(golden_base, example_cocycle):
    p0 = golden_base.point(0.13)
    for n, m in [(3, 7), (20, 30), (11, 5)]:
        left = product(example_cocycle, golden_base, p0, n + m)
        first = product(example_cocycle, golden_base, p0, n)
        second = product(example_cocycle, golden_base, golden_base.advance(p0, n), m)
        composed = second.full() @ first.full()
        rel = np.linalg.norm(left.full() - composed) / np.linalg.norm(composed)
        assert rel <= 1e-9


def test_inverse_product_is_inverse_cocycle(golden_base, example_cocycle):
    p0 = golden_base.point(0.4)
    n = 12
    back = product(example_cocycle, golden_base, p0, -n)
    fwd = product(example_cocycle, golden_base, golden_base.advance(p0, -n), n)
    assert back.full() @ fwd.full() == pytest.approx(np.eye(2), abs=1e-9)


def test_lyapunov_isometry(golden_base):
    lam = lyapunov_max(ConstantRotationCocycle(1.1), golden_base,
                       golden_base.point(0.0), 20000)
    assert abs(lam) <= 1e-10


def test_lyapunov_diagonal(one_symbol_base, diag_cocycle):
    lam = lyapunov_max(diag_cocycle, one_symbol_base, one_symbol_base.point(0), 100)
    assert lam == pytest.approx(math.log(2.0), abs=1e-9)


def test_lyapunov_of_inverse_cocycle(golden_base, example_cocycle):
    p0 = golden_base.point(0.0)
    fwd = lyapunov_max(example_cocycle, golden_base, p0, 1_000_000)
    back = lyapunov_max(example_cocycle, golden_base, p0, -1_000_000)
    assert abs(fwd - back) <= 1e-2
    assert fwd == pytest.approx(LAM_EXACT, abs=1e-3)


def test_directions_of_diagonal(one_symbol_base, diag_cocycle):
    p = one_symbol_base.point(0)
    u = unstable_direction(diag_cocycle, one_symbol_base, p, 50)
    s = stable_direction(diag_cocycle, one_symbol_base, p, 50)
    assert u.alpha == pytest.approx(0.0, abs=1e-8)
    assert s.alpha == pytest.approx(0.5, abs=1e-8)
    assert u.reliable and s.reliable
    swapped = MatrixListCocycle([[[0.5, 0.0], [0.0, 2.0]]])
    u2 = unstable_direction(swapped, one_symbol_base, p, 50)
    s2 = stable_direction(swapped, one_symbol_base, p, 50)
    assert u2.alpha == pytest.approx(0.5, abs=1e-8)
    assert s2.alpha == pytest.approx(0.0, abs=1e-8)


def test_direction_depth_consistency(golden_base, example_cocycle):
    p = golden_base.point(0.0)
    a1 = unstable_direction(example_cocycle, golden_base, p, 1000).alpha
    a2 = unstable_direction(example_cocycle, golden_base, p, 2000).alpha
    assert proj_distance(a1, a2) <= 1e-6


def test_directions_separated(golden_base, example_cocycle):
    for th in np.linspace(0.05, 0.95, 9):
        p = golden_base.point(float(th))
        au = unstable_direction(example_cocycle, golden_base, p, 3000).alpha
        asd = stable_direction(example_cocycle, golden_base, p, 3000).alpha
        assert proj_distance(au, asd) > 1e-3


def test_elliptic_flag(golden_base):
    est = unstable_direction(ConstantRotationCocycle(2.2), golden_base,
                             golden_base.point(0.1), 500)
    assert not est.reliable


def test_graph_invariance_residual(golden_base, example_cocycle, example_h):
    sys = PolarSystem(golden_base, example_cocycle, example_h, beta=4.2)
    for th in (0.0, 0.21, 0.68):
        p = golden_base.point(th)
        au = unstable_direction(example_cocycle, golden_base, p, 1500).alpha
        _, pushed = sys.g(p, au)
        target = unstable_direction(example_cocycle, golden_base,
                                    golden_base.advance(p, 1), 1500).alpha
        assert proj_distance(pushed, target) <= 1e-6


def test_matrix_list_needs_shift_base(golden_base, diag_cocycle):
    with pytest.raises(TypeError):
        matrix(diag_cocycle, golden_base, golden_base.point(0.0))


def test_scaled_rotation_needs_angles(shift_base, example_cocycle):
    with pytest.raises(TypeError):
        product(example_cocycle, shift_base, shift_base.point(0), 3)


def test_alphabet_size_mismatch(shift_base):
    too_short = MatrixListCocycle([[[2.0, 0.0], [0.0, 0.5]]])
    with pytest.raises(ValueError):
        product(too_short, shift_base, shift_base.point(0), 3)
