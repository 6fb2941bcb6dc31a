import numpy as np
import pytest

from subord import bounds, quadrature


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260811)


@pytest.fixture(scope="session")
def constants():
    return quadrature.integral_constants()


@pytest.fixture(scope="session")
def registry():
    return bounds.list_cases()


def random_interior(rng, n, r_max=0.95):
    r = r_max * np.sqrt(rng.uniform(0.0, 1.0, n))
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    return r * np.exp(1j * theta)
