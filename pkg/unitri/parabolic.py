"""
Terminal parabolic splittings of SL(n) and the absorption engine.

For r = n-1 the Levi part Delta is the top-left (n-1)x(n-1) block and Sigma the
last column above the diagonal; for r = 1 Delta is the bottom-right block and
Sigma the first row. A NormalForm is an alternating U L U L ... product of 2L
slots; ``absorb`` keeps that shape under left multiplication by a transvection
lying in a terminal Levi, recursing through the Levi blocks down to rank 2.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from .config import SR1_DEPTH
from .errors import CornerTransvection, DimensionTooSmall, SupportViolation
from .exactmat import (
    Block,
    Factorisation,
    Matrix,
    Side,
    Transvection,
    TransvectionWord,
    embed,
    inverse,
    mul,
    product,
    unitri_inverse,
)
from .sl2core import factor_sl2

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParabolicSplit:
    n: int
    r: int

    def __post_init__(self):
        if self.n < 2 or self.r not in (1, self.n - 1):
            raise ValueError(f"terminal index must be 1 or n-1, got r={self.r} for n={self.n}")

    def in_delta(self, i, j):
        if self.r == self.n - 1:
            return i < self.n - 1 and j < self.n - 1
        return i >= 1 and j >= 1

    def in_sigma(self, i, j):
        if self.r == self.n - 1:
            return j == self.n - 1 and i < self.n - 1
        return i == 0 and j > 0

    def in_neg_sigma(self, i, j):
        return self.in_sigma(j, i)

    def levi_indices(self):
        if self.r == self.n - 1:
            return list(range(self.n - 1))
        return list(range(1, self.n))

    def supported(self, mat, where):
        test = {"delta": self.in_delta, "sigma": self.in_sigma, "-sigma": self.in_neg_sigma}[where]
        return all(test(i, j) for i, j in mat.support())


def choose_split(n, i, j):
    """Terminal Levi containing (i, j), preferring r = n-1; None for the corners."""
    if i < n - 1 and j < n - 1:
        return ParabolicSplit(n, n - 1)
    if i >= 1 and j >= 1:
        return ParabolicSplit(n, 1)
    return None


@dataclass(frozen=True)
class SigmaChunk:
    v: Matrix
    m: Matrix

    def matrix(self):
        return mul(self.v, self.m)


@dataclass(frozen=True)
class NormalForm:
    """2L alternating slots U L U L ... (identities allowed)."""

    slots: tuple

    @classmethod
    def trivial(cls, ring, n, depth=SR1_DEPTH):
        ident = Matrix.identity(ring, n)
        return cls((ident,) * (2 * depth))

    @property
    def depth(self):
        return len(self.slots) // 2

    @property
    def ring(self):
        return self.slots[0].ring

    @property
    def n(self):
        return self.slots[0].n

    @staticmethod
    def side(k):
        return Side.UPPER if k % 2 == 0 else Side.LOWER

    @cached_property
    def product(self):
        return product(self.ring, self.n, self.slots)

    def to_factorisation(self, target=None, word=None):
        return Factorisation.from_slots(list(self.slots), Side.UPPER, target=target, word=word)


# ===========================
# SPLITTING & CONJUGATION
# ===========================

def split_block(block, split):
    """b = delta_part * sigma_part with delta_part in Delta and sigma_part in +-Sigma."""
    rows = [list(r) for r in block.mat.rows]
    zero = block.mat.ring.zero
    for i in range(split.n):
        for j in range(split.n):
            if split.in_sigma(i, j) or split.in_neg_sigma(i, j):
                rows[i][j] = zero
    delta = Matrix(block.mat.ring, tuple(tuple(r) for r in rows))
    sigma = mul(unitri_inverse(delta), block.mat)
    where = "sigma" if block.side is Side.UPPER else "-sigma"
    if not split.supported(sigma, where):
        raise SupportViolation(f"sigma part of a {block.side.name} block leaves {where}")
    return Block(block.side, delta), sigma


def _sign_of(x, split):
    if split.supported(x, "sigma"):
        return "sigma"
    if split.supported(x, "-sigma"):
        return "-sigma"
    raise SupportViolation("matrix is not supported in Sigma or -Sigma")


def conj_sigma(x, d, split, d_inv=None):
    """d^-1 x d, checked to stay in the same +-Sigma as x."""
    if x.is_identity():
        return x
    where = _sign_of(x, split)
    if d_inv is None:
        d_inv = inverse(d)
    result = mul(mul(d_inv, x), d)
    if not split.supported(result, where):
        raise SupportViolation(f"conjugate by a Levi element left {where}")
    return result


def collect(nf, split):
    """Rewrite nf as (D_1 ... D_2L) * V_1 M_1 ... V_L M_L."""
    deltas, sigmas = [], []
    for k, mat in enumerate(nf.slots):
        d, s = split_block(Block(NormalForm.side(k), mat), split)
        deltas.append(d.mat)
        sigmas.append(s)

    # Tail products T_k = D_{k+1} ... D_2L and their inverses, right to left.
    ident = Matrix.identity(nf.ring, nf.n)
    moved = [None] * len(sigmas)
    tail, tail_inv = ident, ident
    for k in range(len(sigmas) - 1, -1, -1):
        moved[k] = conj_sigma(sigmas[k], tail, split, d_inv=tail_inv)
        tail = mul(deltas[k], tail)
        tail_inv = mul(tail_inv, unitri_inverse(deltas[k]))

    chunks = [SigmaChunk(moved[2 * k], moved[2 * k + 1]) for k in range(nf.depth)]
    return deltas, chunks


def reinsert(deltas, chunks, split):
    """NormalForm with product (D_1 ... D_2L) * V_1 M_1 ... V_L M_L."""
    ident = Matrix.identity(deltas[0].ring, deltas[0].n)
    slots = list(deltas)
    # c_k = D_2k ... D_2L (1-based), so V_k and M_k move in as c_k V_k c_k^-1.
    tail, tail_inv = ident, ident
    for k in range(len(chunks) - 1, -1, -1):
        lower = 2 * k + 1
        tail = mul(deltas[lower], tail)
        tail_inv = mul(tail_inv, unitri_inverse(deltas[lower]))
        chunk = chunks[k]
        v = conj_sigma(chunk.v, tail_inv, split, d_inv=tail)
        m = conj_sigma(chunk.m, tail_inv, split, d_inv=tail)
        slots[2 * k] = mul(deltas[2 * k], v)
        slots[lower] = mul(m, deltas[lower])
        tail = mul(deltas[2 * k], tail)
        tail_inv = mul(tail_inv, unitri_inverse(deltas[2 * k]))
    return NormalForm(tuple(slots))


# ===========================
# ABSORPTION
# ===========================

def expand_corner(t, n):
    """Rewrite t_1n(xi) or t_n1(xi) as a commutator of letters in terminal Levis."""
    if n < 3:
        raise DimensionTooSmall("corner expansion needs n >= 3")
    ring = t.xi.ring
    if t.is_trivial():
        return TransvectionWord(ring, n, ())
    one = ring.one
    if (t.i, t.j) == (0, n - 1):
        letters = (
            Transvection(0, 1, t.xi), Transvection(1, n - 1, one),
            Transvection(0, 1, -t.xi), Transvection(1, n - 1, -one),
        )
    elif (t.i, t.j) == (n - 1, 0):
        letters = (
            Transvection(n - 1, 1, t.xi), Transvection(1, 0, one),
            Transvection(n - 1, 1, -t.xi), Transvection(1, 0, -one),
        )
    else:
        letters = (t,)
    return TransvectionWord(ring, n, letters)


def _restrict(t, indices):
    position = {g: k for k, g in enumerate(indices)}
    return Transvection(position[t.i], position[t.j], t.xi)


def _absorb_levi(t, nf, levi_factor):
    """NormalForm for t * nf inside the Levi; only 2x2 products are refactored."""
    if nf.n == 2:
        levi = levi_factor(mul(t.matrix(2), nf.product))
        return NormalForm(tuple(levi.slots("UL" * nf.depth)))
    for s in reversed(expand_corner(t, nf.n).letters):
        nf = absorb(s, nf, levi_factor)
    return nf


def absorb(t, nf, levi_factor=None):
    """NormalForm for t * nf, for a transvection t inside a terminal Levi.

    The Delta parts of nf already form a normal form of the Levi, so t is
    absorbed into them one rank down; ``levi_factor`` (``factor_sl2`` by
    default) only ever sees 2x2 matrices.
    """
    n = nf.n
    if n < 3:
        raise DimensionTooSmall("absorption needs n >= 3")
    split = choose_split(n, t.i, t.j)
    if split is None:
        raise CornerTransvection(f"{t} sits in a corner; expand it first")
    if t.is_trivial():
        return nf
    if levi_factor is None:
        levi_factor = factor_sl2

    deltas, chunks = collect(nf, split)
    indices = split.levi_indices()
    inner = NormalForm(tuple(d.submatrix(indices) for d in deltas))
    levi = _absorb_levi(_restrict(t, indices), inner, levi_factor)
    new_deltas = [embed(m, n, indices) for m in levi.slots]
    _logger.debug("absorbed %s via r=%s at n=%d", t, split.r, n)
    return reinsert(new_deltas, chunks, split)
