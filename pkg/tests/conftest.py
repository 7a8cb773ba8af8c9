import pytest

from kneserlab import tower as tw


@pytest.fixture(scope="session")
def gf16():
    return tw.finite_field(2, 4)


@pytest.fixture(scope="session")
def gf64():
    return tw.finite_field(2, 6)


@pytest.fixture(scope="session")
def ins_t():
    return tw.inseparable(2, ["t"])


@pytest.fixture(scope="session")
def ins_ts():
    return tw.inseparable(2, ["t", "s"])
