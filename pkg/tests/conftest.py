import sys
from pathlib import Path

import numpy as np
import pytest

from psocluster import builtin_iris, subset_dims

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def iris():
    return builtin_iris()


@pytest.fixture(scope="session")
def iris_petal(iris):
    """Columns 2-3: the reference two-feature configuration."""
    return subset_dims(iris, 2, 2)


@pytest.fixture(scope="session")
def iris_sepal(iris):
    return subset_dims(iris, 0, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


class ConstantRng:
    """Stand-in RngStream that always returns the same uniform value."""

    def __init__(self, value):
        self.value = value

    def uniform(self, shape=None):
        return self.value if shape is None else np.full(shape, self.value)


@pytest.fixture
def constant_rng():
    return ConstantRng
