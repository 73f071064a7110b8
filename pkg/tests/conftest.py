import pytest
from mpmath import mp


@pytest.fixture(autouse=True)
def fifty_digits():
    # every test runs in the standard 50-digit context unless it opts out
    old = mp.dps
    mp.dps = 50
    yield
    mp.dps = old
