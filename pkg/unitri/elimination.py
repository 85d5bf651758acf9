"""
Elimination to transvection words, the length-4 factoriser for SL(n, R) with
sr(R) = 1, and the Gauss decomposition U T U^- U with the length-5 factoriser built on it.
"""

import logging

from .config import SR1_DEPTH
from .errors import CapabilityMissing, NotSL, SupportViolation
from .exactmat import (
    Block,
    Factorisation,
    Matrix,
    Side,
    Transvection,
    TransvectionWord,
    apply_transvection,
    det,
    embed,
    mul,
    unitri_inverse,
)
from .monomial import factor_torus
from .parabolic import NormalForm, absorb, expand_corner
from .sl2core import factor_sl2

_logger = logging.getLogger(__name__)


def _check_sl(g):
    d = det(g)
    if not d.is_one():
        raise NotSL(f"determinant is {d}, not 1")


def _trivial(g):
    if g.is_identity():
        return Factorisation((), g)
    if g.is_upper_unitriangular():
        return Factorisation((Block(Side.UPPER, g),), g)
    if g.is_lower_unitriangular():
        return Factorisation((Block(Side.LOWER, g),), g)
    return None


# ===========================
# ELIMINATION
# ===========================

class _Reducer:
    """Tracks left and right transvections applied to a working matrix."""

    def __init__(self, g):
        self.a = g
        self.left = []
        self.right = []

    def row_op(self, i, j, xi):
        if xi.is_zero():
            return
        t = Transvection(i, j, xi)
        self.a = apply_transvection(self.a, t, "left")
        self.left.append(t)

    def col_op(self, i, j, xi):
        if xi.is_zero():
            return
        t = Transvection(i, j, xi)
        self.a = apply_transvection(self.a, t, "right")
        self.right.append(t)


def _unit_pivot_sr1(red, j):
    ring = red.a.ring
    n = red.a.n
    pivot = red.a[j, j]
    if pivot.is_unit():
        return
    below = [red.a[i, j] for i in range(j + 1, n)]
    zs = ring.sr1_witness_vec(below, pivot)
    for i, z in zip(range(j + 1, n), zs):
        red.row_op(j, i, z)


def _unit_pivot_euclid(red, j):
    """Euclidean reduction of column j (rows j..n-1) to a single unit entry at j."""
    ring = red.a.ring
    n = red.a.n
    while True:
        live = [i for i in range(j, n) if not red.a[i, j].is_zero()]
        if len(live) <= 1:
            break
        k = min(live, key=lambda i: ring.euclid_norm(red.a[i, j]))
        for i in live:
            if i != k:
                q = ring.quotient(red.a[i, j], red.a[k, j])
                red.row_op(i, k, -q)
    if not live:
        raise NotSL(f"column {j + 1} vanished during elimination")
    k = live[0]
    if k != j:
        red.row_op(j, k, ring.one)


def eliminate(g):
    """TransvectionWord with product g, for g in SL(n, R), R of sr 1 or Euclidean."""
    _check_sl(g)
    ring, n = g.ring, g.n
    if ring.has_sr1:
        make_unit = _unit_pivot_sr1
    elif ring.is_euclidean:
        make_unit = _unit_pivot_euclid
    else:
        raise CapabilityMissing(f"{ring} is neither stable rank 1 nor Euclidean")

    red = _Reducer(g)
    for j in range(n - 1):
        make_unit(red, j)
        pivot = red.a[j, j]
        if not pivot.is_unit():
            raise SupportViolation(f"pivot {pivot} in column {j + 1} is not a unit")
        inv = pivot.inverse()
        for i in range(j + 1, n):
            red.row_op(i, j, -red.a[i, j] * inv)
        for k in range(j + 1, n):
            red.col_op(j, k, -inv * red.a[j, k])

    diagonal = [red.a[i, i] for i in range(n)]
    letters = [t.inverse() for t in red.left]
    letters += _diagonal_letters(ring, diagonal)
    letters += [t.inverse() for t in reversed(red.right)]
    word = TransvectionWord(ring, n, tuple(letters))
    if word.product() != g:
        raise SupportViolation("elimination word does not reproduce the input")
    _logger.debug("eliminated %dx%d over %s into %d letters", n, n, ring, len(word))
    return word


def _diagonal_letters(ring, diagonal):
    """diag(d) = prod h_{i,i+1}(d_1...d_i), each h written with four letters."""
    letters = []
    running = ring.one
    for i in range(len(diagonal) - 1):
        running = running * diagonal[i]
        if running.is_one():
            continue
        eps, inv, one = running, running.inverse(), ring.one
        letters += [
            Transvection(i, i + 1, -one),
            Transvection(i + 1, i, one - eps),
            Transvection(i, i + 1, inv),
            Transvection(i + 1, i, eps * (eps - one)),
        ]
    return [t for t in letters if not t.is_trivial()]


def expand_corners(word):
    out = TransvectionWord(word.ring, word.n, ())
    for t in word.letters:
        out = out + expand_corner(t, word.n)
    return out


def fold(word, depth, levi_factor=None):
    """Absorb the letters right to left into the trivial normal form."""
    nf = NormalForm.trivial(word.ring, word.n, depth)
    for t in reversed(word.letters):
        nf = absorb(t, nf, levi_factor)
    return nf


# ===========================
# FACTORISERS
# ===========================

def factor_sl(g):
    """SL(n, R) = U L U L for sr(R) = 1."""
    _check_sl(g)
    trivial = _trivial(g)
    if trivial is not None:
        return trivial
    if not g.ring.has_sr1:
        raise CapabilityMissing(f"{g.ring} is not declared stable rank 1")
    if g.n == 2:
        return factor_sl2(g)

    word = expand_corners(eliminate(g))
    nf = fold(word, SR1_DEPTH)
    f = nf.to_factorisation(target=g, word=word)
    if f.product() != g:
        raise SupportViolation("absorbed normal form does not reproduce the input")
    _logger.info("factor_sl %dx%d over %s: %s", g.n, g.n, g.ring, f.pattern())
    return f


def _gauss_gl(a):
    """a = u t v x with u, x upper, v lower unitriangular and t diagonal."""
    ring, n = a.ring, a.n
    ident = Matrix.identity(ring, n)
    if n == 1:
        return ident, a, ident, ident

    last = n - 1
    # x1: upper, last column, makes the corner pivot a unit.
    row = [a[last, j] for j in range(last)]
    zs = ring.sr1_witness_vec(row, a[last, last])
    x1 = _with_column(ident, last, {j: z for j, z in enumerate(zs)})
    a1 = mul(a, x1)
    pivot = a1[last, last]
    inv = pivot.inverse()

    # y1: upper, clears the last column above the pivot.
    y1 = _with_column(ident, last, {i: -a1[i, last] * inv for i in range(last)})
    a2 = mul(y1, a1)

    # a2 = diag(B, pivot) * v1.
    v1 = _with_row(ident, last, {j: a2[last, j] * inv for j in range(last)})
    b = a2.submatrix(range(last))

    ub, tb, vb, xb = _gauss_gl(b)
    top = list(range(last))
    xx = embed(xb, n, top)
    u = mul(unitri_inverse(y1), embed(ub, n, top))
    t = Matrix.diagonal(ring, [tb[i, i] for i in range(last)] + [pivot])
    v = mul(embed(vb, n, top), mul(mul(xx, v1), unitri_inverse(xx)))
    u2 = mul(xx, unitri_inverse(x1))
    return u, t, v, u2


def _with_column(ident, j, entries):
    rows = [list(r) for r in ident.rows]
    for i, x in entries.items():
        rows[i][j] = x
    return Matrix(ident.ring, tuple(tuple(r) for r in rows))


def _with_row(ident, i, entries):
    rows = [list(r) for r in ident.rows]
    for j, x in entries.items():
        rows[i][j] = x
    return Matrix(ident.ring, tuple(tuple(r) for r in rows))


def gauss(g):
    """g = u t v u2 (upper, torus, lower, upper)."""
    _check_sl(g)
    if not g.ring.has_sr1:
        raise CapabilityMissing(f"{g.ring} is not declared stable rank 1")
    u, t, v, u2 = _gauss_gl(g)
    if mul(mul(u, t), mul(v, u2)) != g:
        raise SupportViolation("Gauss decomposition does not reproduce the input")
    return Block(Side.UPPER, u), t, Block(Side.LOWER, v), Block(Side.UPPER, u2)


def factor5(g):
    """SL(n, R) = U L U L U via Gauss and the torus factorisation."""
    u, t, v, u2 = gauss(g)
    w1, w2, w3, w4 = factor_torus([t[i, i] for i in range(g.n)]).slots("ULUL")
    slots = [mul(u.mat, w1), w2, w3, mul(w4, v.mat), u2.mat]
    f = Factorisation.from_slots(slots, Side.UPPER, target=g)
    if f.product() != g:
        raise SupportViolation("length-5 factorisation does not reproduce the input")
    return f
