import numpy as np
import pytest

from delta_eita import Decoherence, Drive, DriveSet


@pytest.fixture
def stock_drives():
    """The canonical loop drive set (Omega12 = Omega13 = 0.2, Omega23 = 1)."""
    return DriveSet(d12=Drive(0.2), d13=Drive(0.2), d23=Drive(1.0))


@pytest.fixture
def stock_dec():
    """gamma13 = 1, gamma12 = gamma23 = 0.1, no pure dephasing."""
    return Decoherence(gamma12=0.1, gamma13=1.0, gamma23=0.1)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
