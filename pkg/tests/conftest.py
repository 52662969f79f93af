import numpy as np
import pytest

from ellweights import ThetaContext


@pytest.fixture(scope="session")
def ctx():
    """Default test context: q = 0.3 on the positive real axis."""
    return ThetaContext.create(q=0.3)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240801)
