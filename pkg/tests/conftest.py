import pytest

from anomalion.anomaly import build_truncation_1d, build_truncation_2d
from anomalion.circuits import builtin_action
from anomalion.lattice import Window


@pytest.fixture(scope="session")
def window12():
    return Window.centered(12, 12, margin=3)


@pytest.fixture(scope="session")
def chain12():
    return Window.chain(12, margin=3)


@pytest.fixture(scope="session")
def ccz_action(window12):
    return builtin_action("ccz_x_2d", window12)


@pytest.fixture(scope="session")
def ccz_data(ccz_action):
    return build_truncation_2d(ccz_action)


@pytest.fixture(scope="session")
def lg_action(chain12):
    return builtin_action("levin_gu_1d", chain12)


@pytest.fixture(scope="session")
def lg_data(lg_action):
    return build_truncation_1d(lg_action)
