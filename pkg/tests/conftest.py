import pytest

from apollonian.config import DUALITY, W_D0
from apollonian.packing import PackingKind, generate


@pytest.fixture(scope="session")
def d0_depth8():
    return generate(W_D0, PackingKind.APOLLONIAN, 8)


@pytest.fixture(scope="session")
def d0_depth9():
    return generate(W_D0, PackingKind.APOLLONIAN, 9)


@pytest.fixture(scope="session")
def dual_d0_depth8():
    # the Apollonian packing of the dual configuration D * W_D0
    return generate(DUALITY @ W_D0, PackingKind.APOLLONIAN, 8)
