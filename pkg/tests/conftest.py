import numpy as np
import pytest

from zetalab import specfun


@pytest.fixture(scope="session")
def zeros50():
    return specfun.find_zeros(50.0)


@pytest.fixture(scope="session")
def zeros100():
    return specfun.find_zeros(100.0)
