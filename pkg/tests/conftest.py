import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from kirchhoff import PowerNonlinearity, shoot_state  # noqa: E402


@functools.lru_cache(maxsize=None)
def cached_state(N, m, p, nodes=0, tol=1e-12, n_grid=4096):
    return shoot_state(PowerNonlinearity(m, p), N, nodes, tol=tol, n_grid=n_grid)


@pytest.fixture(scope="session")
def state():
    return cached_state


@pytest.fixture(scope="session")
def ground3(state):
    return state(3, 1.0, 3.0)
