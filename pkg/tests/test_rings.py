import random
from fractions import Fraction
from math import gcd

import pytest

from unitri.errors import CapabilityMissing, DescriptorMismatch, NotAUnit, NotUnimodular, ParseError
from unitri.exactmat import Matrix
from unitri.localized import LocalizedInteger
from unitri.rings import (
    DirectProduct,
    Integers,
    LocalizedIntegers,
    PrimeField,
    Rationals,
    Zmod,
    arith,
    invert,
    is_unit,
    ring_from_json,
    ring_from_spec,
    sr1_witness,
    sr1_witness_vec,
)


def test_arith_examples(z6, qq):
    assert arith(z6(3), z6(5), "add") == 2
    assert arith(qq(Fraction(1, 2)), qq(Fraction(2, 3)), "mul") == qq(Fraction(1, 3))
    ring = DirectProduct((Zmod(6), Zmod(5)))
    assert arith(ring((3, 2)), ring((2, 3)), "mul").value == (0, 1)
    assert arith(z6(1), None, "neg") == 5


def test_cross_ring_arithmetic_is_rejected(z5, z6):
    with pytest.raises(DescriptorMismatch):
        z5(1) + z6(1)
    with pytest.raises(DescriptorMismatch):
        z5(z6(1))


def test_units_and_inverses(z6, z2p):
    assert is_unit(z6(5))
    assert invert(z6(5)) == 5
    assert not is_unit(z6(3))
    with pytest.raises(NotAUnit):
        invert(z6(3))

    minus_four = z2p(-4)
    assert minus_four.value == LocalizedInteger(-1, 2, 2)
    assert is_unit(minus_four)
    assert invert(minus_four).value.to_fraction() == Fraction(-1, 4)
    assert not is_unit(z2p(3))


def test_inverse_is_two_sided_for_all_units():
    for m in range(2, 102):
        ring = Zmod(m)
        for x in ring.elements():
            if x.is_unit():
                assert (x * x.inverse()).is_one()
                assert (x.inverse() * x).is_one()


def test_sr1_witness_examples(z6, gf5):
    # The scan z = 0, 1, ... stops at 1: 3 + 2 = 5 is already a unit mod 6.
    assert sr1_witness(z6(3), z6(2)) == 1
    assert sr1_witness(gf5(4), gf5(0)) == 0
    assert sr1_witness(gf5(0), gf5(3)) == 1


def test_sr1_witness_rejects_bad_input(z6, zz):
    with pytest.raises(NotUnimodular):
        sr1_witness(z6(2), z6(4))
    with pytest.raises(CapabilityMissing):
        sr1_witness(zz(2), zz(3))
    with pytest.raises(CapabilityMissing):
        LocalizedIntegers(3).sr1_witness(1, 1)


def test_sr1_witness_exhaustive_small_moduli():
    for m in range(2, 13):
        ring = Zmod(m)
        for c in ring.elements():
            for d in ring.elements():
                if gcd(m, c.value, d.value) != 1:
                    continue
                z = ring.sr1_witness(c, d)
                assert (c + d * z).is_unit()


def test_sr1_witness_vec_examples(z6, gf5):
    zs = sr1_witness_vec([z6(3), z6(2)], z6(0))
    assert zs == [1, 1]
    assert (z6(3) * zs[0] + z6(2) * zs[1]) == 5

    assert sr1_witness_vec([gf5(0), gf5(0)], gf5(3)) == [0, 0]
    ring = Zmod(4)
    assert sr1_witness_vec([ring(2)], ring(1)) == [0]


def test_sr1_witness_vec_random(rng):
    for m in (4, 6, 9, 12, 30):
        ring = Zmod(m)
        for _ in range(200):
            cs = [ring.random_element(rng) for _ in range(rng.randint(1, 4))]
            d = ring.random_element(rng)
            if not ring.is_unimodular(cs + [d]):
                with pytest.raises(NotUnimodular):
                    ring.sr1_witness_vec(cs, d)
                continue
            zs = ring.sr1_witness_vec(cs, d)
            total = d
            for c, z in zip(cs, zs):
                total = total + c * z
            assert total.is_unit()


def test_direct_product_witness_is_componentwise():
    ring = DirectProduct((Zmod(4), Zmod(9)))
    for c in ring.elements()[::7]:
        for d in ring.elements()[::5]:
            if not ring.is_unimodular([c, d]):
                continue
            z = ring.sr1_witness(c, d)
            assert (c + d * z).is_unit()
            for i, factor in enumerate(ring.factors):
                cz = ring.component(c, i) + ring.component(d, i) * ring.component(z, i)
                assert cz.is_unit()


def test_canonical_arithmetic_matches_integer_model(rng):
    for m in (2, 6, 12, 97, 10 ** 30 + 57):
        ring = Zmod(m)
        for _ in range(100):
            a, b = rng.randrange(-m, 2 * m), rng.randrange(-m, 2 * m)
            assert (ring(a) + ring(b)).value == (a + b) % m
            assert (ring(a) - ring(b)).value == (a - b) % m
            assert (ring(a) * ring(b)).value == (a * b) % m
            assert (ring(a) == ring(b)) == ((a - b) % m == 0)


def test_localized_arithmetic_matches_fractions(rng):
    for p in (2, 3, 5):
        ring = LocalizedIntegers(p)
        for _ in range(200):
            x = Fraction(rng.randint(-50, 50), p ** rng.randint(0, 4))
            y = Fraction(rng.randint(-50, 50), p ** rng.randint(0, 4))
            assert (ring(x) + ring(y)).value.to_fraction() == x + y
            assert (ring(x) * ring(y)).value.to_fraction() == x * y
            assert (ring(x) - ring(y)).value.to_fraction() == x - y


def test_parsing_entries(z5, qq, z2p):
    assert z5.parse("1/2") == 3
    assert z5.parse(7) == 2
    assert qq.parse("1/2") == qq(Fraction(1, 2))
    assert z2p.parse("3*2^-1").value == LocalizedInteger(3, -1, 2)
    assert z2p.parse({"a": "-4", "v": 1}).value == LocalizedInteger(-1, 3, 2)
    assert z2p.parse("5/4").value == LocalizedInteger(5, -2, 2)
    with pytest.raises(ValueError):
        z2p.parse("3*3^1")
    with pytest.raises(ValueError):
        qq.parse("1/0")
    with pytest.raises(ValueError):
        z5.parse(True)
    with pytest.raises(ValueError):
        z2p.parse("1/3")


def test_integer_rings_refuse_fractions(z5, gf5, zz):
    for ring in (z5, gf5, zz):
        with pytest.raises(ParseError):
            ring(Fraction(1, 2))
        with pytest.raises(ParseError):
            ring(2.5)
        assert ring(Fraction(6, 2)) == 3
    with pytest.raises(ParseError):
        Matrix.from_rows(z5, [[Fraction(1, 2)]])
    assert z5.parse("1/2") == 3


def test_ring_descriptors():
    rings = [
        Zmod(6), PrimeField(5), Rationals(), Integers(), LocalizedIntegers(2),
        DirectProduct((Zmod(2), Zmod(3))),
    ]
    for ring in rings:
        assert ring_from_spec(ring.spec()) == ring
        assert ring_from_json(ring.to_json()) == ring
    assert Zmod(6).to_json() == {"ring": "zmod", "m": 6}
    assert ring_from_spec("product:zmod:2,zmod:3").size == 6
    assert Zmod(5) != PrimeField(5)


@pytest.mark.parametrize("text", ["foo", "zmod:x", "zmod:1", "gf:4", "zp:6", "product:q"])
def test_ring_from_spec_errors(text):
    with pytest.raises(ParseError):
        ring_from_spec(text)


def test_ring_from_json_errors():
    with pytest.raises(ParseError):
        ring_from_json({"ring": "zmod"})
    with pytest.raises(ParseError):
        ring_from_json({"ring": "poly"})


def test_capability_flags():
    assert Zmod(4).has_sr1 and PrimeField(3).has_sr1 and Rationals().has_sr1
    assert DirectProduct((Zmod(2), Zmod(2))).has_sr1
    assert not Integers().has_sr1 and Integers().is_euclidean
    assert not LocalizedIntegers(2).has_sr1 and LocalizedIntegers(2).is_euclidean
    with pytest.raises(CapabilityMissing):
        Integers().elements()


def test_random_elements_belong_to_ring():
    rng = random.Random(7)
    ring = DirectProduct((Zmod(4), Zmod(3)))
    for _ in range(20):
        x = ring.random_element(rng)
        assert x in ring.elements()
