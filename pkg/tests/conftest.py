import numpy as np
import pytest

from awspec.qcore import QContext
from awspec.qpolys import JacobiLevel


@pytest.fixture
def ctx():
    return QContext(0.5)


@pytest.fixture
def level():
    return JacobiLevel(0.3, -0.2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
