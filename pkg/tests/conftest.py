import mpmath
import pytest
from hypothesis import settings

settings.register_profile("dimkit", deadline=None, derandomize=True)
settings.load_profile("dimkit")

mpmath.mp.dps = 40


def rel_err(got, want):
    want = float(want)
    return abs(got - want) / abs(want) if want != 0 else abs(got)


@pytest.fixture
def rel():
    return rel_err
