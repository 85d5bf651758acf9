import pytest
from conftest import mat

from unitri.errors import CornerTransvection, DimensionTooSmall, SupportViolation
from unitri.exactmat import (
    Block,
    Matrix,
    Side,
    Transvection,
    TransvectionWord,
    mul,
    product,
    verify_factorisation,
)
from unitri.parabolic import (
    NormalForm,
    ParabolicSplit,
    SigmaChunk,
    absorb,
    choose_split,
    collect,
    conj_sigma,
    expand_corner,
    reinsert,
    split_block,
)
from unitri.rings import Zmod
from unitri.sl2core import factor_sl2


def random_unitriangular(ring, n, side, rng, indices=None, letters=5):
    indices = list(range(n)) if indices is None else indices
    word = []
    for _ in range(letters):
        i, j = sorted(rng.sample(indices, 2))
        if side is Side.LOWER:
            i, j = j, i
        word.append(Transvection(i, j, ring.random_element(rng)))
    return TransvectionWord(ring, n, tuple(word)).product()


def random_normal_form(ring, n, depth, rng):
    slots = tuple(random_unitriangular(ring, n, NormalForm.side(k), rng) for k in range(2 * depth))
    return NormalForm(slots)


def test_split_membership():
    upper = ParabolicSplit(4, 3)
    assert upper.in_delta(0, 2) and not upper.in_delta(0, 3)
    assert upper.in_sigma(1, 3) and upper.in_neg_sigma(3, 1)
    assert upper.levi_indices() == [0, 1, 2]
    lower = ParabolicSplit(4, 1)
    assert lower.in_delta(3, 1) and lower.in_sigma(0, 2)
    assert lower.levi_indices() == [1, 2, 3]
    with pytest.raises(ValueError):
        ParabolicSplit(4, 2)


def test_choose_split():
    assert choose_split(3, 0, 1).r == 2
    assert choose_split(3, 1, 2).r == 1
    assert choose_split(3, 2, 1).r == 1
    assert choose_split(3, 0, 2) is None
    assert choose_split(3, 2, 0) is None


def test_split_block_examples(zz):
    b = Block(Side.UPPER, mat(zz, [[1, 2, 3], [0, 1, 4], [0, 0, 1]]))
    delta, sigma = split_block(b, ParabolicSplit(3, 2))
    assert delta.mat == mat(zz, [[1, 2, 0], [0, 1, 0], [0, 0, 1]])
    assert sigma == mat(zz, [[1, 0, -5], [0, 1, 4], [0, 0, 1]])
    assert mul(delta.mat, sigma) == b.mat

    ident = Matrix.identity(zz, 3)
    delta, sigma = split_block(Block(Side.UPPER, ident), ParabolicSplit(3, 2))
    assert delta.mat.is_identity() and sigma.is_identity()

    t32 = Transvection(2, 1, zz(5)).matrix(3)
    delta, sigma = split_block(Block(Side.LOWER, t32), ParabolicSplit(3, 1))
    assert delta.mat == t32 and sigma.is_identity()


def test_split_block_random(rng):
    ring = Zmod(6)
    for n in (3, 4, 5):
        for split in (ParabolicSplit(n, n - 1), ParabolicSplit(n, 1)):
            for side in Side:
                b = random_unitriangular(ring, n, side, rng)
                delta, sigma = split_block(Block(side, b), split)
                assert mul(delta.mat, sigma) == b
                assert split.supported(delta.mat, "delta")
                assert split.supported(sigma, "sigma" if side is Side.UPPER else "-sigma")


def test_conj_sigma_examples(zz):
    split = ParabolicSplit(3, 2)
    x = Transvection(0, 2, zz(1)).matrix(3)
    assert conj_sigma(x, Transvection(0, 1, zz(1)).matrix(3), split) == x
    assert conj_sigma(x, Transvection(1, 0, zz(1)).matrix(3), split) == mat(
        zz, [[1, 0, 1], [0, 1, -1], [0, 0, 1]]
    )
    ident = Matrix.identity(zz, 3)
    assert conj_sigma(x, ident, split) == x
    assert conj_sigma(ident, Transvection(1, 0, zz(4)).matrix(3), split).is_identity()


def test_conj_sigma_rejects_mixed_support(zz):
    split = ParabolicSplit(3, 2)
    x = Transvection(0, 1, zz(1)).matrix(3)
    with pytest.raises(SupportViolation):
        conj_sigma(x, Matrix.identity(zz, 3), split)


def test_levi_normalises_sigma(rng):
    ring = Zmod(10)
    for n in (3, 4):
        split = ParabolicSplit(n, n - 1)
        levi = list(range(n - 1))
        for _ in range(100):
            d = mul(
                random_unitriangular(ring, n, Side.UPPER, rng, levi, 3),
                random_unitriangular(ring, n, Side.LOWER, rng, levi, 3),
            )
            rows = [list(r) for r in Matrix.identity(ring, n).rows]
            for i in range(n - 1):
                rows[i][n - 1] = ring.random_element(rng)
            x = Matrix(ring, tuple(tuple(r) for r in rows))
            assert split.supported(conj_sigma(x, d, split), "sigma")
            assert split.supported(conj_sigma(x.transpose(), d, split), "-sigma")


def test_collect_pure_sigma_letter(zz):
    ident = Matrix.identity(zz, 3)
    t13 = Transvection(0, 2, zz(1)).matrix(3)
    nf = NormalForm((t13, ident, ident, ident))
    deltas, chunks = collect(nf, ParabolicSplit(3, 2))
    assert all(d.is_identity() for d in deltas)
    assert chunks[0].v == t13
    assert chunks[0].m.is_identity() and chunks[1].matrix().is_identity()


def test_collect_without_sigma_parts(z5):
    slots = (
        Transvection(0, 1, z5(2)).matrix(3), Transvection(1, 0, z5(3)).matrix(3),
        Transvection(0, 1, z5(1)).matrix(3), Matrix.identity(z5, 3),
    )
    deltas, chunks = collect(NormalForm(slots), ParabolicSplit(3, 2))
    assert tuple(deltas) == slots
    assert all(c.matrix().is_identity() for c in chunks)


def test_reinsert_direct_placement(zz):
    ident = Matrix.identity(zz, 3)
    v = Transvection(0, 2, zz(2)).matrix(3)
    m = Transvection(2, 0, zz(3)).matrix(3)
    nf = reinsert([ident] * 4, [SigmaChunk(v, m), SigmaChunk(ident, ident)], ParabolicSplit(3, 2))
    assert nf.slots == (v, m, ident, ident)


@pytest.mark.parametrize("n", [3, 4])
def test_collect_reinsert_round_trip(n, rng):
    ring = Zmod(6)
    for _ in range(20):
        nf = random_normal_form(ring, n, 2, rng)
        for split in (ParabolicSplit(n, n - 1), ParabolicSplit(n, 1)):
            deltas, chunks = collect(nf, split)
            moved = product(ring, n, [c.matrix() for c in chunks])
            assert mul(product(ring, n, deltas), moved) == nf.product
            back = reinsert(deltas, chunks, split)
            assert back.product == nf.product
            for k, slot in enumerate(back.slots):
                assert slot.is_unitriangular(NormalForm.side(k))


def test_absorb_into_trivial(zz):
    nf = absorb(Transvection(0, 1, zz(1)), NormalForm.trivial(zz, 3))
    t12 = Transvection(0, 1, zz(1)).matrix(3)
    assert nf.slots[0] == t12
    assert all(s.is_identity() for s in nf.slots[1:])


def test_absorb_two_letters(z5):
    nf = NormalForm.trivial(z5, 3)
    nf = absorb(Transvection(1, 2, z5(1)), nf)
    nf = absorb(Transvection(0, 1, z5(1)), nf)
    expected = mul(Transvection(0, 1, z5(1)).matrix(3), Transvection(1, 2, z5(1)).matrix(3))
    assert nf.product == expected
    assert verify_factorisation(nf.to_factorisation(target=expected)).ok


def test_absorb_keeps_shape(rng):
    ring = Zmod(6)
    for n in (3, 4):
        nf = NormalForm.trivial(ring, n)
        expected = Matrix.identity(ring, n)
        for _ in range(8):
            i, j = rng.sample(range(n), 2)
            if {i, j} == {0, n - 1}:
                continue
            t = Transvection(i, j, ring.random_element(rng))
            nf = absorb(t, nf)
            expected = mul(t.matrix(n), expected)
            assert len(nf.slots) == 4
            assert nf.product == expected
            for k, slot in enumerate(nf.slots):
                assert slot.is_unitriangular(NormalForm.side(k))


def test_absorb_errors(z5):
    with pytest.raises(CornerTransvection):
        absorb(Transvection(0, 2, z5(1)), NormalForm.trivial(z5, 3))
    with pytest.raises(DimensionTooSmall):
        absorb(Transvection(0, 1, z5(1)), NormalForm.trivial(z5, 2))


def test_absorb_refactors_only_two_by_two(rng):
    ring, n = Zmod(6), 5
    sizes = []

    def levi_factor(h):
        sizes.append(h.n)
        return factor_sl2(h)

    nf = NormalForm.trivial(ring, n)
    expected = Matrix.identity(ring, n)
    for _ in range(12):
        i, j = rng.sample(range(n), 2)
        t = Transvection(i, j, ring(rng.randint(1, 5)))
        for s in reversed(expand_corner(t, n).letters):
            nf = absorb(s, nf, levi_factor)
        expected = mul(t.matrix(n), expected)
    assert nf.product == expected
    assert sizes and set(sizes) == {2}
    for k, slot in enumerate(nf.slots):
        assert slot.is_unitriangular(NormalForm.side(k))


def test_absorb_trivial_letter(z5):
    nf = absorb(Transvection(0, 1, z5(2)), NormalForm.trivial(z5, 4))
    assert absorb(Transvection(2, 3, z5(0)), nf) is nf
