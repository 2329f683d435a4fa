# Shared pytest configuration and fixtures for the matcon tests.

import numpy as np
import pytest

from . import conf
from . import families


@pytest.fixture(autouse=True)
def _isolated_conf():
    """ Settings changed by a test are put back to their defaults afterwards """
    yield
    conf.reset()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def minimal42():
    return families.minimal_matroid(4, 2)


@pytest.fixture
def removed42():
    """ minimal(4, 2) with E0 = {e1, e2} removed """
    return families.removed_base_matroid(4, 2, 0b0011)
