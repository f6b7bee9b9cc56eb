"""skewtorus: forced planar skew products through the two-step torus
bifurcation -- cocycle exponents, the projective polar reduction, pullback
bounding graphs, forward two-point attractors and regime classification.
"""

from .base import GOLDEN_MEAN, BasePoint, CircleRotation, RandomShift, WindowOverflowError
from .cocycle import (
    ConstantRotationCocycle,
    DirectionEstimate,
    LogProduct,
    MatrixListCocycle,
    ScaledRotationCocycle,
    lyapunov_max,
    matrix,
    product,
    stable_direction,
    unstable_direction,
)
from .errors import NumericsError
from .model import (
    ArctanH,
    CustomH,
    ModelSystem,
    critical_betas,
    d2_check,
    radial_bound,
    section7_h,
)
from .polar import PolarState, PolarSystem, doubled_angle, proj_distance, proj_vector, project
from .attractor import (
    ClassifyParams,
    Grid,
    InvarianceReport,
    PsiField,
    Regime,
    RegimeReport,
    TorusBoundary,
    TwoPointResult,
    cesaro_average,
    classify,
    invariance_residual,
    psi_field,
    psi_plus_point,
    torus_boundary,
    two_point_forward,
)
from . import ctime

__version__ = "0.1.0"

__all__ = [
    "GOLDEN_MEAN",
    "BasePoint",
    "CircleRotation",
    "RandomShift",
    "WindowOverflowError",
    "NumericsError",
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
    "ArctanH",
    "CustomH",
    "ModelSystem",
    "critical_betas",
    "d2_check",
    "radial_bound",
    "section7_h",
    "PolarSystem",
    "PolarState",
    "project",
    "proj_vector",
    "proj_distance",
    "doubled_angle",
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
    "ctime",
    "__version__",
]
