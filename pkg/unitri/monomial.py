"""
Length-4 factorisation of monomial matrices of determinant 1, over any commutative ring.

Induction on n: right multiplication by at most four Sigma letters (for r = n-1)
moves g into the Levi diag(SN(n-1), 1); the Levi factor is handled recursively
and the Sigma letters are put back with ``parabolic.reinsert``.
"""

import logging
from dataclasses import dataclass

from .config import SR1_DEPTH
from .errors import DetNotOne, NotAUnit, NotMonomial, NotSL, SupportViolation
from .exactmat import (
    Matrix,
    Transvection,
    apply_transvection,
    det,
    embed,
)
from .parabolic import NormalForm, ParabolicSplit, SigmaChunk, reinsert

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialMatrix:
    """units[j] sits at (perm[j], j); perm is 0-based."""

    ring: object
    perm: tuple
    units: tuple

    @classmethod
    def from_matrix(cls, g):
        if not g.is_monomial():
            raise NotMonomial("matrix is not monomial")
        perm, units = [], []
        for j in range(g.n):
            i = next(i for i in range(g.n) if not g[i, j].is_zero())
            perm.append(i)
            units.append(g[i, j])
        return cls(g.ring, tuple(perm), tuple(units))

    @classmethod
    def from_json(cls, ring, obj):
        perm = tuple(int(i) - 1 for i in obj["perm"])
        units = tuple(ring.parse(u) for u in obj["units"])
        if sorted(perm) != list(range(len(perm))) or len(units) != len(perm):
            raise NotMonomial(f"{obj['perm']} is not a permutation matching the units")
        for u in units:
            if not u.is_unit():
                raise NotAUnit(f"{u} is not a unit of {ring}")
        return cls(ring, perm, units)

    def to_matrix(self):
        n = len(self.perm)
        rows = [[self.ring.zero] * n for _ in range(n)]
        for j, (i, u) in enumerate(zip(self.perm, self.units)):
            rows[i][j] = u
        return Matrix(self.ring, tuple(tuple(r) for r in rows))

    def to_json(self):
        return {"perm": [i + 1 for i in self.perm], "units": [u.to_json() for u in self.units]}


def _entry_col(g, row):
    return next(j for j in range(g.n) if not g[row, j].is_zero())


def _entry_row(g, col):
    return next(i for i in range(g.n) if not g[i, col].is_zero())


def _reduce(g):
    """h = g * (Sigma letters) in diag(*, 1) and the two chunks with g = h * chunks."""
    ring, n = g.ring, g.n
    last = n - 1
    ident = Matrix.identity(ring, n)

    def t(i, j, xi):
        return Transvection(i, j, xi)

    b = g[last, last]
    if b.is_zero():
        s = _entry_col(g, last)
        r = _entry_row(g, last)
        a, b = g[r, last], g[last, s]
        b_inv = b.inverse()
        multipliers = [t(s, last, b_inv), t(last, s, -b), t(s, last, b_inv)]
        chunks = [
            SigmaChunk(t(s, last, -b_inv).matrix(n), t(last, s, b).matrix(n)),
            SigmaChunk(t(s, last, -b_inv).matrix(n), ident),
        ]
        expected = (-a * b, ring.zero, ring.zero, ring.one)
        case = 1
    elif b.is_one():
        return g, [SigmaChunk(ident, ident)] * SR1_DEPTH, None
    else:
        r = 0
        s = _entry_col(g, r)
        a = g[r, s]
        b_inv = b.inverse()
        one = ring.one
        multipliers = [
            t(last, s, b_inv), t(s, last, one - b),
            t(last, s, -one), t(s, last, -b_inv * (one - b)),
        ]
        chunks = [
            SigmaChunk(t(s, last, b_inv * (one - b)).matrix(n), t(last, s, one).matrix(n)),
            SigmaChunk(t(s, last, b - one).matrix(n), t(last, s, -b_inv).matrix(n)),
        ]
        expected = (a * b, ring.zero, ring.zero, ring.one)
        case = 2

    h = g
    for m in multipliers:
        h = apply_transvection(h, m, "right")
    minor = (h[r, s], h[r, last], h[last, s], h[last, last])
    if minor != expected:
        raise SupportViolation(f"monomial case {case} left the minor at {minor}")
    _logger.debug("monomial n=%d case %d at (r, s)=(%d, %d)", n, case, r + 1, s + 1)
    return h, chunks, case


def _factor_slots(g):
    """Four U L U L slots for a monomial g of determinant 1."""
    ring, n = g.ring, g.n
    if n == 1:
        return NormalForm.trivial(ring, 1, SR1_DEPTH)
    h, chunks, _ = _reduce(g)
    top = list(range(n - 1))
    levi = _factor_slots(h.submatrix(top))
    deltas = [embed(m, n, top) for m in levi.slots]
    return reinsert(deltas, chunks, ParabolicSplit(n, n - 1))


def factor_monomial(g):
    """SN(n, R) inside U L U L; accepts a Matrix or a MonomialMatrix."""
    if isinstance(g, MonomialMatrix):
        g = g.to_matrix()
    if not g.is_monomial():
        raise NotMonomial("matrix is not monomial")
    d = det(g)
    if not d.is_one():
        raise NotSL(f"determinant is {d}, not 1")
    nf = _factor_slots(g)
    f = nf.to_factorisation(target=g)
    if f.product() != g:
        raise SupportViolation("monomial factorisation does not reproduce the input")
    return f


def factor_torus(entries):
    """diag(eps_1, ..., eps_n) with product 1, as at most four blocks."""
    if not entries:
        raise ValueError("empty diagonal")
    ring = entries[0].ring
    total = ring.one
    for e in entries:
        if not e.is_unit():
            raise NotAUnit(f"{e} is not a unit of {ring}")
        total = total * e
    if not total.is_one():
        raise DetNotOne(f"diagonal entries multiply to {total}")
    return factor_monomial(Matrix.diagonal(ring, entries))
