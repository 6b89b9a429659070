import numpy as np
import pytest

from flnls.spectral import Field, make_grid


@pytest.fixture(scope="session")
def grid_1d():
    return make_grid(1, 64, 2.0 * np.pi)


@pytest.fixture(scope="session")
def grid_1d_wide():
    return make_grid(1, 256, 32.0)


@pytest.fixture(scope="session")
def grid_2d():
    return make_grid(2, 32, 16.0)


def random_field(grid, seed, scale=1.0):
    """Unstructured complex field (full spectrum, for transform tests)."""
    rng = np.random.Generator(np.random.Philox(seed))
    vals = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
    return Field(grid, scale * vals)
