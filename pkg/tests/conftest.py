import numpy as np
import pytest

from lu_invar.fixtures import load_fixture
from lu_invar.states import make_decomposition

SQRT_HALF = 1.0 / np.sqrt(2.0)
SQRT_THIRD = 1.0 / np.sqrt(3.0)


@pytest.fixture(scope="session")
def rho1():
    return load_fixture("rho1")


@pytest.fixture(scope="session")
def rho2():
    return load_fixture("rho2")


@pytest.fixture(scope="session")
def sigma1():
    return load_fixture("sigma1")


@pytest.fixture(scope="session")
def sigma2():
    return load_fixture("sigma2")


@pytest.fixture(scope="session")
def rho1_decomp():
    # the printed decomposition of diag(1/2, 1/2, 0, 0)
    return make_decomposition(
        [
            np.array([[SQRT_HALF, 0.0], [0.0, 0.0]]),
            np.array([[0.0, SQRT_HALF], [0.0, 0.0]]),
        ]
    )


@pytest.fixture(scope="session")
def rho2_decomp():
    return make_decomposition(
        [
            np.array([[SQRT_HALF, 0.0], [0.0, 0.0]]),
            np.array([[0.0, 0.0], [SQRT_HALF, 0.0]]),
        ]
    )


@pytest.fixture(scope="session")
def sigma1_decomp():
    return make_decomposition(
        [
            np.array([[SQRT_THIRD, 0.0], [0.0, 0.0]]),
            np.array([[0.0, SQRT_THIRD], [SQRT_THIRD, 0.0]]),
        ]
    )


@pytest.fixture(scope="session")
def sigma2_decomp():
    return make_decomposition(
        [
            np.array([[np.sqrt(2.0 / 3.0), 0.0], [0.0, 0.0]]),
            np.array([[0.0, 0.0], [0.0, SQRT_THIRD]]),
        ]
    )
