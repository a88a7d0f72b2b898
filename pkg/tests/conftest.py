import numpy as np
import pytest

from specmoll import LocalizerConfig, get_signal


@pytest.fixture(scope="session")
def f1():
    return get_signal("f1")


@pytest.fixture(scope="session")
def f2():
    return get_signal("f2")


@pytest.fixture(scope="session")
def cfg():
    return LocalizerConfig()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
