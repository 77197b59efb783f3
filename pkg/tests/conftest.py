import pytest

from sbox_spectra import make_field


@pytest.fixture(scope="session")
def f26():
    return make_field(2, 6)


@pytest.fixture(scope="session")
def f28():
    return make_field(2, 8)


@pytest.fixture(scope="session")
def f24():
    return make_field(2, 4)


@pytest.fixture(scope="session")
def f33():
    return make_field(3, 3)


@pytest.fixture(scope="session")
def f32():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def f52():
    return make_field(5, 2)
