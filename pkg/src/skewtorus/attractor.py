"""Pullback computation of the radial upper bounding graph, regime
classification, the torus boundary, forward two-point dynamics and
Cesaro diagnostics.

The bounding graph psi+(theta, alpha) is the fibrewise supremum of the
global attractor of the double skew product; finitely deep pullback from
the invariant radial bound approximates it from above, monotonically in
depth. Fields are sampled on cell-centre grids; psi_field additionally
renders the measure-zero expanding graph into the cell containing it
(see psi_field), which is what makes the segment regime visible on a
grid at all.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .base import BasePoint, CircleRotation, RandomShift
from .cocycle import SEED_ANGLE, _check_window, _lower, stable_direction, unstable_direction
from .errors import NumericsError
from .model import ArctanH, ModelSystem
from .polar import PolarSystem, proj_distance, proj_vector, project

__all__ = [
    "Grid",
    "PsiField",
    "Regime",
    "ClassifyParams",
    "RegimeReport",
    "TorusBoundary",
    "TwoPointResult",
    "InvarianceReport",
    "psi_plus_point",
    "psi_field",
    "classify",
    "torus_boundary",
    "two_point_forward",
    "cesaro_average",
    "invariance_residual",
]

DEFAULT_DEPTH = 3000


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centre grid on [0,1) x [0,1): node (i, j) sits at
    ((i+0.5)/theta_res, (j+0.5)/alpha_res), keeping nodes off measure-zero
    exceptional sets. Over a shift base the theta rows are window indices."""

    theta_res: int = 512
    alpha_res: int = 512

    def __post_init__(self):
        if self.theta_res < 2 or self.alpha_res < 2:
            raise ValueError("grid resolutions must be >= 2")

    def theta_values(self) -> np.ndarray:
        return (np.arange(self.theta_res) + 0.5) / self.theta_res

    def alpha_values(self) -> np.ndarray:
        return (np.arange(self.alpha_res) + 0.5) / self.alpha_res


@dataclass(frozen=True)
class PsiField:
    """Grid-sampled upper bounding graph with its pullback metadata."""

    beta: float
    depth: int
    values: np.ndarray
    r_start: float
    grid: Grid

    def __post_init__(self):
        if self.values.shape != (self.grid.theta_res, self.grid.alpha_res):
            raise ValueError("values shape does not match the grid")


class Regime(enum.Enum):
    TRIVIAL = "Trivial"
    SEGMENT = "Segment"
    TORUS = "Torus"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ClassifyParams:
    """Thresholds for the regime trichotomy.

    eps_zero is the numerically-zero level for the whole field; eps_pos is
    the structurally-positive level used both for the torus minimum and for
    counting positive cells per theta row (the finite-depth skirt around
    the expanding graph decays through [eps_zero, eps_pos] and must not be
    mistaken for segment mass).
    """

    eps_zero: float = 1e-6
    eps_pos: float = 1e-4
    segment_fraction: float = 0.02

    def __post_init__(self):
        if not (0.0 < self.eps_zero <= self.eps_pos):
            raise ValueError("need 0 < eps_zero <= eps_pos")
        if not (0.0 < self.segment_fraction < 1.0):
            raise ValueError("segment_fraction must be in (0, 1)")


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    max_psi: float
    min_psi: float
    row_positive_fraction: np.ndarray = field(repr=False)
    params_used: ClassifyParams = ClassifyParams()

    @property
    def max_row_fraction(self) -> float:
        return float(self.row_positive_fraction.max())

    @property
    def mean_row_fraction(self) -> float:
        return float(self.row_positive_fraction.mean())


@dataclass(frozen=True)
class TorusBoundary:
    """Closed boundary curve samples per theta row, in the original-plane
    (full-turn) angle convention."""

    alphas: np.ndarray
    radii: np.ndarray


@dataclass(frozen=True)
class TwoPointResult:
    steps: np.ndarray
    distances: np.ndarray
    norms: np.ndarray
    positions: np.ndarray
    endpoint_radii: np.ndarray
    endpoint_angles: np.ndarray


@dataclass(frozen=True)
class InvarianceReport:
    """Graph-invariance defect of a field together with the first-order
    interpolation scale (max adjacent jump in theta plus in alpha) that
    bounds it."""

    residual: float
    scale: float


def _require_arctan(h) -> float:
    if not isinstance(h, ArctanH):
        raise TypeError("compiled pullback paths support the arctan profile; "
                        "other profiles go through the Python evaluator")
    return h.kappa


def psi_plus_point(sys: PolarSystem, p: BasePoint, alpha: float, depth: int,
                   r_start: float | None = None) -> float:
    """Finite-depth pullback of the bounding radius at one (point, alpha):
    depth fibre steps applied along the backward projective orbit, started
    at the invariant radial bound. Non-increasing in depth."""
    depth = int(depth)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if r_start is None:
        r_start = sys.r_top()
    _check_window(sys.base, p, -depth, 0)
    if isinstance(sys.h, ArctanH):
        args = _lower(sys.cocycle, sys.base, p)
        return float(_kernels.pullback_point(*args, sys.beta, sys.h.kappa,
                                             r_start, alpha, depth))
    # generic profile: same pullback in plain Python
    q, a = p, alpha
    angles = []
    for _ in range(depth):
        q, a = sys.g_inverse(q, a)
        angles.append((q, a))
    r = r_start
    for q, a in reversed(angles):
        r = sys.fibre(q, a, r)
    return r


def _graph_overlay_python(sys: PolarSystem, p: BasePoint, depth: int,
                          r_start: float, seed_angle: float) -> tuple[float, float]:
    """Forward transport of a generic line from the orbit bottom: lands on
    the expanding direction carrying the pullback radius along it."""
    q = sys.base.advance(p, -depth)
    a, r = seed_angle, r_start
    for _ in range(depth):
        r = sys.fibre(q, a, r)
        q, a = sys.g(q, a)
    return a, r


def psi_field(sys: PolarSystem, grid: Grid, depth: int,
              graph_overlay: bool = True, seed_angle: float = SEED_ANGLE) -> PsiField:
    """Pullback field over the grid, one pullback per node, parallel over
    theta rows with a fixed per-node evaluation order (results do not
    depend on the worker count).

    With graph_overlay (default) each row also pulls one generic line
    forward from the bottom of its orbit; the line converges onto the
    expanding direction and the transported radius converges to the
    bounding value on it, which is max-deposited into the alpha cell it
    lands in. Off the graph the pullback decays whenever beta < beta_2, so
    without this overlay the segment regime is invisible at any grid
    resolution. graph_overlay=False gives plain node-centred sampling.
    """
    depth = int(depth)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    r_start = sys.r_top()
    base = sys.base
    if isinstance(base, CircleRotation):
        anchors = grid.theta_values()
        srows = np.zeros(grid.theta_res, dtype=np.int64)
    elif isinstance(base, RandomShift):
        if grid.theta_res + depth > base.n_max:
            raise ValueError("grid rows plus depth exceed the symbol window")
        anchors = np.zeros(grid.theta_res)
        srows = np.arange(grid.theta_res, dtype=np.int64)
    else:
        raise TypeError(f"unsupported base {type(base).__name__}")

    if isinstance(sys.h, ArctanH):
        args = _lower(sys.cocycle, sys.base, base.point() if isinstance(base, CircleRotation)
                      else base.point(0))
        bk, rho, _anchor, _steps, symbols, n_max, ck, cp, mats = args
        values = _kernels.pullback_field(bk, rho, anchors, srows, symbols, n_max,
                                         ck, cp, mats, sys.beta, sys.h.kappa, r_start,
                                         grid.alpha_res, depth, graph_overlay, seed_angle)
    else:
        values = np.zeros((grid.theta_res, grid.alpha_res))
        for i in range(grid.theta_res):
            p = (base.point(float(anchors[i])) if isinstance(base, CircleRotation)
                 else base.point(int(srows[i])))
            for j, alpha in enumerate(grid.alpha_values()):
                values[i, j] = psi_plus_point(sys, p, float(alpha), depth, r_start)
            if graph_overlay:
                ag, rg = _graph_overlay_python(sys, p, depth, r_start, seed_angle)
                jg = min(int(ag * grid.alpha_res), grid.alpha_res - 1)
                values[i, jg] = max(values[i, jg], rg)
    if np.isnan(values).any():
        raise NumericsError("pullback field produced NaN")
    values.setflags(write=False)
    return PsiField(sys.beta, depth, values, r_start, grid)


def classify(fld: PsiField, params: ClassifyParams = ClassifyParams()) -> RegimeReport:
    """Regime trichotomy from field statistics.

    Trivial when the whole field sits below eps_zero; Torus when every
    cell clears eps_pos; Segment when the field has structurally positive
    mass (>= eps_pos) confined to at most segment_fraction of each theta
    row; anything else is Indeterminate. Within ~2% of a critical
    parameter the per-step rates vanish and Indeterminate is an expected,
    documented outcome.
    """
    v = fld.values
    max_psi = float(v.max())
    min_psi = float(v.min())
    row_frac = (v > params.eps_pos).sum(axis=1) / fld.grid.alpha_res
    if max_psi < params.eps_zero:
        regime = Regime.TRIVIAL
    elif min_psi > params.eps_pos:
        regime = Regime.TORUS
    elif max_psi >= params.eps_pos and float(row_frac.max()) <= params.segment_fraction:
        regime = Regime.SEGMENT
    else:
        regime = Regime.INDETERMINATE
    return RegimeReport(regime, max_psi, min_psi, row_frac, params)


def torus_boundary(fld: PsiField, params: ClassifyParams = ClassifyParams()) -> TorusBoundary:
    """Boundary curve samples r(theta, alpha) in the original-plane angle
    convention (the polar field at the doubled angle). Each row is a closed
    strictly positive curve; only meaningful for a Torus field."""
    report = classify(fld, params)
    if report.regime is not Regime.TORUS:
        raise ValueError(f"torus boundary requested for a {report.regime.value} field")
    ar = fld.grid.alpha_res
    # plane angles whose doubled value hits the field's cell centres:
    # (k+0.5)/(2*ar) for k < 2*ar, so radii are the field row tiled twice
    alphas = (np.arange(2 * ar) + 0.5) / (2.0 * ar)
    radii = np.tile(fld.values, 2)
    return TorusBoundary(alphas, radii)


def two_point_forward(sys_model: ModelSystem, p0: BasePoint, v0, n: int, burn_in: int,
                      *, window: int = 64, direction_depth: int = 1500,
                      psi_depth: int = DEFAULT_DEPTH, stable_tol: float = 1e-6) -> TwoPointResult:
    """Forward orbit against the symmetric endpoint pair on the expanding
    direction.

    Follows the planar orbit of v0 and, on a checkpoint window after
    burn_in (at most `window` steps, capped by n), rebuilds the endpoint
    pair +-r v(alpha_u) at the transported fibre from the independently
    computed expanding direction and the pullback radius on it, reporting
    the distance of the orbit to the nearer endpoint. Initial vectors
    within stable_tol of the contracting line are rejected as
    ill-conditioned.
    """
    if burn_in < 0 or n <= burn_in:
        raise ValueError("need 0 <= burn_in < n")
    v0 = np.asarray(v0, dtype=float)
    r0 = float(np.hypot(v0[0], v0[1]))
    if r0 == 0.0:
        raise ValueError("v0 must be nonzero")
    a_s = stable_direction(sys_model.cocycle, sys_model.base, p0, direction_depth)
    if proj_distance(project(v0), a_s.alpha) < stable_tol:
        raise ValueError("v0 lies within tolerance of the contracting line")

    h = sys_model.h
    if not isinstance(h, ArctanH):
        raise TypeError("two_point_forward needs the arctan profile")
    args0 = _lower(sys_model.cocycle, sys_model.base, p0)
    _check_window(sys_model.base, p0,
                  min(0, burn_in - max(direction_depth, psi_depth)), n)

    beta, kappa = sys_model.beta, h.kappa
    psys = PolarSystem(sys_model.base, sys_model.cocycle, h, beta)
    r_start = psys.r_top()

    ks = list(range(burn_in, min(n, burn_in + window)))
    x, y = _kernels.planar_iterate(*args0, beta, kappa, v0[0], v0[1], burn_in)
    steps, dists, norms, pos, radii, angs = [], [], [], [], [], []
    for k in ks:
        pk = sys_model.base.advance(p0, k)
        argk = _lower(sys_model.cocycle, sys_model.base, pk)
        au, _g = _kernels.push_direction(*argk, -direction_depth, direction_depth,
                                         SEED_ANGLE, False)
        r = float(_kernels.pullback_point(*argk, beta, kappa, r_start, au, psi_depth))
        e = r * proj_vector(au)
        dist = min(math.hypot(x - e[0], y - e[1]), math.hypot(x + e[0], y + e[1]))
        steps.append(k)
        dists.append(dist)
        norms.append(math.hypot(x, y))
        pos.append((x, y))
        radii.append(r)
        angs.append(au)
        x, y = _kernels.planar_iterate(*argk, beta, kappa, x, y, 1)
    return TwoPointResult(np.array(steps), np.array(dists), np.array(norms),
                          np.array(pos), np.array(radii), np.array(angs))


def cesaro_average(sys_model: ModelSystem, p: BasePoint, v, n: int) -> float:
    """(1/n) sum_{i<n} ||f^i(v)||; the sub-exponential decay diagnostic for
    the critical parameters."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    v = np.asarray(v, dtype=float)
    _check_window(sys_model.base, p, 0, n)
    if isinstance(sys_model.h, ArctanH):
        args = _lower(sys_model.cocycle, sys_model.base, p)
        return float(_kernels.planar_cesaro(*args, sys_model.beta, sys_model.h.kappa,
                                            v[0], v[1], n))
    acc = 0.0
    q, w = p, v
    for _ in range(n):
        acc += float(np.hypot(w[0], w[1]))
        w = sys_model.fibre_map(q, w)
        q = sys_model.base.advance(q, 1)
    return acc / n


def invariance_residual(fld: PsiField, sys: PolarSystem) -> InvarianceReport:
    """Max over nodes of |F(psi(node)) - psi(g(node))| with the right side
    bilinearly interpolated on the torus grid, reported with the
    interpolation scale that bounds it to first order."""
    tr, ar = fld.grid.theta_res, fld.grid.alpha_res
    vals = fld.values
    th = fld.grid.theta_values()
    al = fld.grid.alpha_values()

    base = sys.base
    if not isinstance(base, CircleRotation):
        raise TypeError("invariance residual is defined over the rotation base grid")
    mats = np.empty((tr, 2, 2))
    for i, t in enumerate(th):
        mats[i] = sys.cocycle.matrix(base, base.point(float(t)))
    va = np.cos(np.pi * al)
    vb = np.sin(np.pi * al)
    wx = mats[:, 0, 0][:, None] * va[None, :] + mats[:, 0, 1][:, None] * vb[None, :]
    wy = mats[:, 1, 0][:, None] * va[None, :] + mats[:, 1, 1][:, None] * vb[None, :]
    om = np.hypot(wx, wy)
    hvals = np.vectorize(sys.h)(sys.beta * vals) if not isinstance(sys.h, ArctanH) \
        else sys.h.kappa * np.arctan(sys.beta * vals)
    f_img = hvals * om

    th_img = (th + base.rho) % 1.0
    al_img = (np.arctan2(wy, wx) / np.pi) % 1.0
    u = th_img[:, None] * tr - 0.5 + np.zeros_like(al_img)
    w = al_img * ar - 0.5
    i0 = np.floor(u).astype(np.int64)
    j0 = np.floor(w).astype(np.int64)
    fu = u - i0
    fw = w - j0
    i0 %= tr
    j0 %= ar
    i1 = (i0 + 1) % tr
    j1 = (j0 + 1) % ar
    interp = (vals[i0, j0] * (1 - fu) * (1 - fw) + vals[i1, j0] * fu * (1 - fw)
              + vals[i0, j1] * (1 - fu) * fw + vals[i1, j1] * fu * fw)
    residual = float(np.abs(f_img - interp).max())
    jump_t = float(np.abs(vals - np.roll(vals, -1, axis=0)).max())
    jump_a = float(np.abs(vals - np.roll(vals, -1, axis=1)).max())
    return InvarianceReport(residual, jump_t + jump_a)
