import warnings

import numpy as np
import pytest

import orlicztf as o


@pytest.fixture(scope="session")
def grid64():
    return o.make_grid(64, 8.0)


@pytest.fixture(scope="session")
def grid128():
    return o.make_grid(128, 10.0)


@pytest.fixture(scope="session")
def grid256():
    return o.make_grid(256, 12.0)


def gaussian_window(grid, lam=1.0):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return o.make_gaussian(grid, lam)


def noise_field(grid, seed):
    rng = np.random.default_rng(seed)
    return o.Field(grid, rng.standard_normal(grid.shape)
                   + 1j * rng.standard_normal(grid.shape))


def unit(f):
    return o.Field(f.grid, f.values / o.l2_norm(f))
