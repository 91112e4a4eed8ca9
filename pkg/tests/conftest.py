import numpy as np
import pytest

from nhscope.logger import initialize_logger


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: figure-scale sweeps (deselect with -m 'not slow')")


@pytest.fixture(autouse=True, scope="session")
def quiet_logger():
    initialize_logger(log_level="WARNING", enable_colors=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_matrix(rng):
    def make(n):
        return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return make
