import numpy as np
import pytest

from witnesses import gen_fig3, gen_fig4, lower_bound_projection


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long benchmark and verification tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running desk-scale reproduction")


def pytest_collection_modifyitems(config, items):
    """Unless --runslow is given, mark every slow test as skipped."""
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fig3():
    return gen_fig3()


@pytest.fixture
def fig4():
    return gen_fig4()


@pytest.fixture
def projection_ab():
    return lower_bound_projection()
