import itertools
import random

import pytest

from unitri.exactmat import Matrix
from unitri.rings import DirectProduct, Integers, LocalizedIntegers, PrimeField, Rationals, Zmod


@pytest.fixture
def z5():
    return Zmod(5)


@pytest.fixture
def z6():
    return Zmod(6)


@pytest.fixture
def zz():
    return Integers()


@pytest.fixture
def qq():
    return Rationals()


@pytest.fixture
def z2p():
    return LocalizedIntegers(2)


@pytest.fixture
def gf5():
    return PrimeField(5)


@pytest.fixture
def boolean2():
    return DirectProduct((Zmod(2), Zmod(2)))


@pytest.fixture
def rng():
    return random.Random(20240601)


def mat(ring, rows):
    return Matrix.from_rows(ring, rows)


def sl2_elements(ring):
    for a, b, c, d in itertools.product(ring.elements(), repeat=4):
        if (a * d - b * c).is_one():
            yield Matrix(ring, ((a, b), (c, d)))
