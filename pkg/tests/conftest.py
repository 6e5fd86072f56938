import pytest

from spinwalls import diagonal_lattice, neg


BARLOW_K = (3, 1, 1, 1, 1, 1, 1, 1, 1)


@pytest.fixture
def barlow_lattice():
    return diagonal_lattice([1] + [-1] * 8)


@pytest.fixture
def barlow_k():
    return BARLOW_K


@pytest.fixture
def barlow_spin(barlow_k):
    return neg(barlow_k)
