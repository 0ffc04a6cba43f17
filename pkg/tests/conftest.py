import pytest

from mt243.modsym import default_engine


@pytest.fixture(scope="session")
def engine():
    return default_engine()
