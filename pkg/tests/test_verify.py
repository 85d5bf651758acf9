import pytest
from conftest import mat, sl2_elements

from unitri.elimination import factor_sl
from unitri.errors import BadPattern, CapabilityMissing, TooLarge
from unitri.exactmat import Factorisation, Matrix, det
from unitri.rings import DirectProduct, Rationals, Zmod
from unitri.verify import commutator3, enumerate_sets, enumeration_table, random_sl


def test_enumerate_z2():
    report = enumerate_sets(Zmod(2), 2)
    assert report.sl_size == 6
    assert report.length4_complete
    assert report.torus_size == 1


def test_enumerate_boolean_ring(boolean2):
    report = enumerate_sets(boolean2, 2)
    assert report.length3_complete
    assert report.sl_size == 36


def test_enumerate_z5():
    report = enumerate_sets(Zmod(5), 2)
    assert report.sl_size == 120
    assert report.length4_complete
    assert report.sharp
    assert not report.length3_complete
    assert report.torus_size == 4
    assert report.ulul_torus_size == 4


def test_enumerate_z9():
    report = enumerate_sets(Zmod(9), 2)
    assert report.sl_size == 648
    assert report.length4_complete and report.sharp


def test_enumerate_limits():
    with pytest.raises(TooLarge):
        enumerate_sets(Zmod(5), 3)
    with pytest.raises(TooLarge):
        enumerate_sets(Zmod(3), 2, limit=80)
    with pytest.raises(CapabilityMissing):
        enumerate_sets(Rationals(), 2)


def test_enumeration_table(boolean2):
    frame = enumeration_table([enumerate_sets(Zmod(2), 2), enumerate_sets(boolean2, 2)])
    assert list(frame['|SL|']) == [6, 36]
    assert frame['Length 3 complete'].all()
    assert list(frame.columns)[:2] == ['Ring', 'n']


def test_report_json():
    obj = enumerate_sets(Zmod(3), 2).to_json()
    assert obj["ring"] == {"ring": "zmod", "m": 3}
    assert obj["sl"] == 24 and obj["sharp"] is True


def test_random_sl_is_seeded():
    ring = Zmod(7)
    g1, w1 = random_sl(ring, 3, 10, 42)
    g2, w2 = random_sl(ring, 3, 10, 42)
    assert g1 == g2 and w1 == w2
    assert w1.product() == g1
    assert random_sl(ring, 3, 0, 1)[0].is_identity()


def test_random_sl_has_det_one(rng):
    ring = DirectProduct((Zmod(4), Zmod(3)))
    for _ in range(100):
        g, _ = random_sl(ring, rng.randint(2, 4), 8, rng.randrange(2 ** 32))
        assert det(g).is_one()


def test_commutator_worked_example(z5):
    g = mat(z5, [[0, 1], [4, 0]])
    decomposition = commutator3(g, factor_sl(g))
    assert decomposition.product() == g
    assert decomposition.upper.is_valid() and decomposition.lower.is_valid()


def test_commutator_identity(z5):
    ident = Matrix.identity(z5, 2)
    decomposition = commutator3(ident, Factorisation((), ident))
    assert decomposition.commutator.is_identity()
    assert decomposition.product().is_identity()


def test_commutator_exhaustive():
    ring = Zmod(7)
    for g in sl2_elements(ring):
        assert commutator3(g, factor_sl(g)).product() == g


def test_commutator_rank_three(rng):
    ring = Zmod(6)
    g, _ = random_sl(ring, 3, 10, rng.randrange(2 ** 32))
    assert commutator3(g, factor_sl(g)).product() == g


def test_commutator_rejects_wrong_factorisation(z5):
    g = mat(z5, [[0, 1], [4, 0]])
    with pytest.raises(BadPattern):
        commutator3(Matrix.identity(z5, 2), factor_sl(g))
