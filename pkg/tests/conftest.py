import numpy as np
import pytest

from gaussherm.grid import DEFAULT_GRID, GridSpec


@pytest.fixture(scope="session")
def grid():
    return DEFAULT_GRID


@pytest.fixture(scope="session")
def wide_grid():
    return GridSpec(24.0, 6144)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
