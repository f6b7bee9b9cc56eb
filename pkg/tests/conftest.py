import numpy as np
import pytest

from skewtorus.base import CircleRotation, GOLDEN_MEAN, RandomShift
from skewtorus.cocycle import ConstantRotationCocycle, MatrixListCocycle, ScaledRotationCocycle
from skewtorus.model import section7_h


@pytest.fixture(scope="session")
def golden_base():
    return CircleRotation(GOLDEN_MEAN)


@pytest.fixture(scope="session")
def example_cocycle():
    return ScaledRotationCocycle(0.5)


@pytest.fixture(scope="session")
def example_h():
    return section7_h()


@pytest.fixture(scope="session")
def shift_base():
    return RandomShift(seed=7, n_max=5000, alphabet_size=2)


@pytest.fixture(scope="session")
def diag_cocycle():
    """Constant diag(2, 1/2) presented as a one-symbol matrix list."""
    return MatrixListCocycle([[[2.0, 0.0], [0.0, 0.5]]])


@pytest.fixture(scope="session")
def one_symbol_base():
    return RandomShift(seed=1, n_max=2_000_000, alphabet_size=1)
