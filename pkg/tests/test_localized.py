from fractions import Fraction

import pytest

from unitri.localized import LocalizedInteger


def test_make_normalises():
    assert LocalizedInteger.make(12, 0, 2) == LocalizedInteger(3, 2, 2)
    assert LocalizedInteger.make(0, 5, 2) == LocalizedInteger(0, 0, 2)
    assert LocalizedInteger.make(-9, -1, 3) == LocalizedInteger(-1, 1, 3)


def test_from_fraction():
    assert LocalizedInteger.from_fraction(Fraction(3, 8), 2) == LocalizedInteger(3, -3, 2)
    assert LocalizedInteger.from_fraction(Fraction(-10, 1), 5) == LocalizedInteger(-2, 1, 5)
    with pytest.raises(ValueError):
        LocalizedInteger.from_fraction(Fraction(1, 3), 2)


def test_units_are_signed_prime_powers():
    assert LocalizedInteger(1, -4, 2).is_unit()
    assert LocalizedInteger(-1, 7, 2).is_unit()
    assert not LocalizedInteger(3, 0, 2).is_unit()
    assert LocalizedInteger(-1, 3, 2).inverse() == LocalizedInteger(-1, -3, 2)
    with pytest.raises(ZeroDivisionError):
        LocalizedInteger(3, 0, 2).inverse()


def test_quotient_reduces_the_norm(rng):
    for p in (2, 3, 7):
        for _ in range(300):
            x = LocalizedInteger.make(rng.randint(-500, 500), rng.randint(-3, 3), p)
            y = LocalizedInteger.make(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(-3, 3), p)
            q = x.quotient(y)
            r = x - q * y
            assert r.euclid_norm() < y.euclid_norm()
            assert (q * y + r).to_fraction() == x.to_fraction()


def test_str():
    assert str(LocalizedInteger(3, 0, 2)) == "3"
    assert str(LocalizedInteger(3, -1, 2)) == "3*2^-1"
