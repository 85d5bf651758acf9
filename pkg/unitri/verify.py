"""
Brute-force oracles over tiny finite rings, random SL generators and the
commutator decomposition g = [u x u^-1, u v u^-1] * (u v) * (x y).
"""

import itertools
import logging
import random
from dataclasses import dataclass

import pandas as pd

from . import config
from .errors import BadPattern, CapabilityMissing, SupportViolation, TooLarge
from .exactmat import (
    Block,
    Matrix,
    Side,
    Transvection,
    TransvectionWord,
    det,
    mul,
    unitri_inverse,
    verify_factorisation,
)

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumerationReport:
    ring: object
    n: int
    sl_size: int
    ulu_size: int
    ulul_size: int
    ulul_torus_size: int
    ulu_torus_size: int
    torus_size: int

    @property
    def length4_complete(self):
        return self.ulul_size == self.sl_size

    @property
    def length3_complete(self):
        return self.ulu_size == self.sl_size

    @property
    def sharp(self):
        return self.ulu_torus_size == 1

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "n": self.n,
            "sl": self.sl_size,
            "ulu": self.ulu_size,
            "ulul": self.ulul_size,
            "ulul_torus": self.ulul_torus_size,
            "ulu_torus": self.ulu_torus_size,
            "torus": self.torus_size,
            "length4_complete": self.length4_complete,
            "length3_complete": self.length3_complete,
            "sharp": self.sharp,
        }


def _unitriangular(ring, n, side):
    elements = ring.elements()
    positions = [(i, j) for i in range(n) for j in range(n) if (i < j if side is Side.UPPER else i > j)]
    out = []
    for values in itertools.product(elements, repeat=len(positions)):
        rows = [list(r) for r in Matrix.identity(ring, n).rows]
        for (i, j), x in zip(positions, values):
            rows[i][j] = x
        out.append(Matrix(ring, tuple(tuple(r) for r in rows)))
    return out


def enumerate_sets(ring, n, limit=None):
    """Exhaustive sizes of SL(n, R), U U^- U and (U U^-)^2, and their torus parts."""
    if not ring.is_finite:
        raise CapabilityMissing(f"{ring} is not finite")
    limit = config.ENUMERATION_LIMIT if limit is None else limit
    if ring.size ** (n * n) > limit:
        raise TooLarge(f"|R|^(n^2) = {ring.size}^{n * n} exceeds {limit}")

    elements = ring.elements()
    sl = set()
    torus = set()
    for entries in itertools.product(elements, repeat=n * n):
        g = Matrix(ring, tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n)))
        if det(g).is_one():
            sl.add(g.key())
            if g.is_diagonal():
                torus.add(g.key())

    uppers = _unitriangular(ring, n, Side.UPPER)
    lowers = _unitriangular(ring, n, Side.LOWER)
    ul = {}
    for u in uppers:
        for l in lowers:
            m = mul(u, l)
            ul.setdefault(m.key(), m)
    ulu = {mul(a, u).key() for a in ul.values() for u in uppers}
    ulul = {mul(a, b).key() for a in ul.values() for b in ul.values()}

    report = EnumerationReport(
        ring, n, len(sl), len(ulu), len(ulul),
        len(ulul & torus), len(ulu & torus), len(torus),
    )
    _logger.info("enumerated %s n=%d: %s", ring, n, report.to_json())
    return report


def enumeration_table(reports):
    rows = [
        [str(r.ring), r.n, r.sl_size, r.ulu_size, r.ulul_size, r.torus_size,
         r.length4_complete, r.length3_complete, r.sharp]
        for r in reports
    ]
    return pd.DataFrame(rows, columns=[
        'Ring', 'n', '|SL|', '|UU-U|', '|(UU-)^2|', '|T|',
        'Length 4 complete', 'Length 3 complete', 'Sharp',
    ])


def random_word(ring, n, word_len, rng):
    letters = []
    for _ in range(word_len):
        i, j = rng.sample(range(n), 2)
        letters.append(Transvection(i, j, ring.random_element(rng)))
    return TransvectionWord(ring, n, tuple(letters))


def random_sl(ring, n, word_len, seed):
    """Seeded random element of E(n, R) together with the word producing it."""
    word = random_word(ring, n, word_len, random.Random(seed))
    return word.product(), word


@dataclass(frozen=True)
class CommutatorDecomposition:
    commutator: Matrix
    upper: Block
    lower: Block
    conj_x: Matrix
    conj_v: Matrix

    def product(self):
        return mul(mul(self.commutator, self.upper.mat), self.lower.mat)


def commutator3(g, f):
    """g = u x v y rewritten as [u x u^-1, u v u^-1] * (u v) * (x y)."""
    report = verify_factorisation(f)
    if not report.ok or f.target != g:
        raise BadPattern(f"factorisation does not verify against g: {report.first_violation}")
    u, x, v, y = f.slots("ULUL")
    u_inv = unitri_inverse(u)
    cx = mul(mul(u, x), u_inv)
    cv = mul(mul(u, v), u_inv)
    cx_inv = mul(mul(u, unitri_inverse(x)), u_inv)
    cv_inv = mul(mul(u, unitri_inverse(v)), u_inv)
    commutator = mul(mul(cx, cv), mul(cx_inv, cv_inv))
    result = CommutatorDecomposition(
        commutator, Block(Side.UPPER, mul(u, v)), Block(Side.LOWER, mul(x, y)), cx, cv,
    )
    if result.product() != g:
        raise SupportViolation("commutator decomposition does not reproduce g")
    return result
