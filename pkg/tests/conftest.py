import pytest

from gentlekit.generate import algebra_pool
from gentlekit.goldens import load_fixture

POOL_SEED = 0x5EED_2024_0601
POOL_SIZE = 100


@pytest.fixture(scope="session")
def nine():
    return load_fixture("nine_vertex")


@pytest.fixture(scope="session")
def kronecker():
    return load_fixture("kronecker")


@pytest.fixture(scope="session")
def pool():
    return algebra_pool(POOL_SEED, POOL_SIZE)
