"""
Exact dense square matrices over a commutative ring.

Includes transvections, unitriangular blocks, the Factorisation container and
its verifier, plus division-free linear algebra (Berkowitz characteristic
polynomial, determinant, adjugate, inverse). Indices are 0-based here and
1-based in JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    BadPattern,
    DescriptorMismatch,
    DimensionMismatch,
    NotAUnit,
    ParseError,
)
from .rings import ring_from_json


class Side(Enum):
    UPPER = "U"
    LOWER = "L"

    @property
    def other(self):
        return Side.LOWER if self is Side.UPPER else Side.UPPER


# ===========================
# MATRICES
# ===========================

@dataclass(frozen=True)
class Matrix:
    ring: object
    rows: tuple

    @classmethod
    def from_rows(cls, ring, rows):
        rows = tuple(tuple(ring(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        return cls(ring, rows)

    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one, ring.zero
        return cls(ring, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, ring, entries):
        entries = [ring(x) for x in entries]
        n = len(entries)
        return cls(ring, tuple(
            tuple(entries[i] if i == j else ring.zero for j in range(n)) for i in range(n)
        ))

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def key(self):
        """Hashable tuple of raw payloads; cheaper than hashing elements."""
        return tuple(tuple(x.value for x in row) for row in self.rows)

    def _check(self, other):
        if other.ring != self.ring:
            raise DescriptorMismatch(f"cannot combine matrices over {self.ring} and {other.ring}")
        if other.n != self.n:
            raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return mul(self, other)

    def __add__(self, other):
        self._check(other)
        return Matrix(self.ring, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)
        ))

    def __sub__(self, other):
        self._check(other)
        return Matrix(self.ring, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)
        ))

    def scale(self, c):
        c = self.ring(c)
        return Matrix(self.ring, tuple(tuple(c * x for x in row) for row in self.rows))

    def transpose(self):
        return Matrix(self.ring, tuple(zip(*self.rows)))

    def flip(self):
        """J g J for the order-reversing permutation J; swaps upper and lower."""
        return Matrix(self.ring, tuple(tuple(reversed(row)) for row in reversed(self.rows)))

    def submatrix(self, indices):
        return Matrix(self.ring, tuple(tuple(self.rows[i][j] for j in indices) for i in indices))

    def is_identity(self):
        return all(
            x.is_one() if i == j else x.is_zero()
            for i, row in enumerate(self.rows) for j, x in enumerate(row)
        )

    def is_upper_unitriangular(self):
        return all(
            (x.is_one() if i == j else x.is_zero())
            for i, row in enumerate(self.rows) for j, x in enumerate(row) if j <= i
        )

    def is_lower_unitriangular(self):
        return all(
            (x.is_one() if i == j else x.is_zero())
            for i, row in enumerate(self.rows) for j, x in enumerate(row) if j >= i
        )

    def is_unitriangular(self, side):
        if side is Side.UPPER:
            return self.is_upper_unitriangular()
        return self.is_lower_unitriangular()

    def is_diagonal(self):
        return all(
            x.is_zero() for i, row in enumerate(self.rows) for j, x in enumerate(row) if i != j
        )

    def is_monomial(self):
        n = self.n
        for row in self.rows:
            nonzero = [x for x in row if not x.is_zero()]
            if len(nonzero) != 1 or not nonzero[0].is_unit():
                return False
        for j in range(n):
            if sum(1 for i in range(n) if not self.rows[i][j].is_zero()) != 1:
                return False
        return True

    def support(self):
        """Off-diagonal positions holding nonzero entries."""
        return {
            (i, j)
            for i, row in enumerate(self.rows) for j, x in enumerate(row)
            if i != j and not x.is_zero()
        }

    def to_json(self):
        return {
            "n": self.n,
            "ring": self.ring.to_json(),
            "entries": [[x.to_json() for x in row] for row in self.rows],
        }

    def __str__(self):
        width = max(len(str(x)) for row in self.rows for x in row)
        return "\n".join(
            "[" + " ".join(str(x).rjust(width) for x in row) + "]" for row in self.rows
        )


def embed(small, n, indices):
    """Identity of size n with ``small`` placed on the rows/columns ``indices``."""
    rows = [list(r) for r in Matrix.identity(small.ring, n).rows]
    for a, i in enumerate(indices):
        for b, j in enumerate(indices):
            rows[i][j] = small.rows[a][b]
    return Matrix(small.ring, tuple(tuple(r) for r in rows))


def mul(a, b):
    a._check(b)
    zero = a.ring.zero
    rows = []
    # Zero entries on either side are skipped.
    for row in a.rows:
        acc = [zero] * b.n
        for k, x in enumerate(row):
            if x.is_zero():
                continue
            for j, y in enumerate(b.rows[k]):
                if not y.is_zero():
                    acc[j] = acc[j] + x * y
        rows.append(tuple(acc))
    return Matrix(a.ring, tuple(rows))


def product(ring, n, matrices):
    result = Matrix.identity(ring, n)
    for m in matrices:
        result = mul(result, m)
    return result


# ===========================
# TRANSVECTIONS
# ===========================

@dataclass(frozen=True)
class Transvection:
    """t_ij(xi) = e + xi * e_ij (0-based i, j)."""

    i: int
    j: int
    xi: object

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError(f"transvection needs i != j, got ({self.i}, {self.j})")

    def side(self):
        return Side.UPPER if self.i < self.j else Side.LOWER

    def matrix(self, n):
        ring = self.xi.ring
        rows = [list(r) for r in Matrix.identity(ring, n).rows]
        rows[self.i][self.j] = self.xi
        return Matrix(ring, tuple(tuple(r) for r in rows))

    def inverse(self):
        return Transvection(self.i, self.j, -self.xi)

    def is_trivial(self):
        return self.xi.is_zero()

    def to_json(self):
        return {"i": self.i + 1, "j": self.j + 1, "xi": self.xi.to_json()}

    def __str__(self):
        return f"t{self.i + 1}{self.j + 1}({self.xi})"


def apply_transvection(g, t, side):
    """g * t (side "right": col j += xi col i) or t * g (side "left": row i += xi row j)."""
    if t.xi.ring != g.ring:
        raise DescriptorMismatch(f"transvection over {t.xi.ring}, matrix over {g.ring}")
    if max(t.i, t.j) >= g.n:
        raise DimensionMismatch(f"{t} does not act on dimension {g.n}")
    rows = [list(r) for r in g.rows]
    if side == "right":
        for row in rows:
            row[t.j] = row[t.j] + t.xi * row[t.i]
    elif side == "left":
        rows[t.i] = [a + t.xi * b for a, b in zip(rows[t.i], rows[t.j])]
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return Matrix(g.ring, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class TransvectionWord:
    ring: object
    n: int
    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    def __add__(self, other):
        return TransvectionWord(self.ring, self.n, self.letters + other.letters)

    def product(self):
        g = Matrix.identity(self.ring, self.n)
        for t in self.letters:
            g = apply_transvection(g, t, "right")
        return g

    def inverse(self):
        return TransvectionWord(self.ring, self.n, tuple(t.inverse() for t in reversed(self.letters)))

    def to_json(self):
        return [t.to_json() for t in self.letters]


# ===========================
# DIVISION-FREE LINEAR ALGEBRA
# ===========================

def _dot(xs, ys, zero):
    return sum((x * y for x, y in zip(xs, ys)), zero)


def charpoly(g):
    """Coefficients [1, c1, ..., cn] of det(xI - g), by Berkowitz's algorithm."""
    ring, a = g.ring, g.rows
    zero = ring.zero
    coeffs = [ring.one]
    for k in range(g.n):
        r = a[k][:k]
        s = [a[i][k] for i in range(k)]
        col = [ring.one, -a[k][k]]
        vec = s
        for _ in range(k):
            col.append(-_dot(r, vec, zero))
            vec = [_dot(a[i][:k], vec, zero) for i in range(k)]
        coeffs = [
            sum((col[i - j] * coeffs[j] for j in range(min(i, k) + 1)), zero)
            for i in range(k + 2)
        ]
    return coeffs


def det(g):
    c = charpoly(g)
    return c[-1] if g.n % 2 == 0 else -c[-1]


def adjugate(g):
    """adj(g) via Cayley-Hamilton; valid over any commutative ring."""
    coeffs = charpoly(g)
    ident = Matrix.identity(g.ring, g.n)
    p = ident
    for c in coeffs[1:g.n]:
        p = mul(g, p) + ident.scale(c)
    return p if g.n % 2 == 1 else p.scale(-1)


def inverse(g):
    d = det(g)
    if not d.is_unit():
        raise NotAUnit(f"determinant {d} is not a unit of {g.ring}")
    if d.is_one():
        return adjugate(g)
    return adjugate(g).scale(d.inverse())


def unitri_inverse(g):
    """Inverse of a unitriangular matrix as the finite series I + N + N^2 + ..."""
    ident = Matrix.identity(g.ring, g.n)
    nil = ident - g
    result = ident
    for _ in range(g.n - 1):
        result = ident + mul(nil, result)
    return result


def classify(g):
    flags = set()
    if g.is_upper_unitriangular():
        flags.add("upper_unitriangular")
    if g.is_lower_unitriangular():
        flags.add("lower_unitriangular")
    if g.is_diagonal():
        flags.add("diagonal")
    if g.is_monomial():
        flags.add("monomial")
    if g.is_identity():
        flags.add("identity")
    if det(g).is_one():
        flags.add("sl")
    return flags


# ===========================
# BLOCKS & FACTORISATIONS
# ===========================

@dataclass(frozen=True)
class Block:
    side: Side
    mat: Matrix

    def is_valid(self):
        return self.mat.is_unitriangular(self.side)

    def to_json(self):
        return {"side": self.side.value, **self.mat.to_json()}


@dataclass(frozen=True)
class Factorisation:
    blocks: tuple
    target: Matrix
    word: TransvectionWord | None = field(default=None, compare=False)

    @classmethod
    def from_slots(cls, slots, leading=Side.UPPER, target=None, word=None, n=None, ring=None):
        """Alternating slots starting with ``leading``; identities dropped, neighbours merged."""
        if slots:
            ring, n = slots[0].ring, slots[0].n
        blocks = []
        side = leading
        for mat in slots:
            if not mat.is_identity():
                if blocks and blocks[-1].side is side:
                    merged = mul(blocks[-1].mat, mat)
                    blocks.pop()
                    if not merged.is_identity():
                        blocks.append(Block(side, merged))
                else:
                    blocks.append(Block(side, mat))
            side = side.other
        if target is None:
            target = product(ring, n, [b.mat for b in blocks])
        return cls(tuple(blocks), target, word)

    @classmethod
    def from_blocks(cls, blocks, target=None, word=None):
        """Merge a list of Blocks that may repeat sides."""
        merged = []
        for block in blocks:
            if block.mat.is_identity():
                continue
            if merged and merged[-1].side is block.side:
                mat = mul(merged[-1].mat, block.mat)
                merged.pop()
                if not mat.is_identity():
                    merged.append(Block(block.side, mat))
            else:
                merged.append(block)
        if target is None:
            if not blocks:
                raise ValueError("an empty block list needs an explicit target")
            mats = [b.mat for b in blocks]
            target = mats[0] if len(mats) == 1 else product(mats[0].ring, mats[0].n, mats)
        return cls(tuple(merged), target, word)

    def length(self):
        return len(self.blocks)

    def pattern(self):
        return " ".join(b.side.value for b in self.blocks)

    def product(self):
        return product(self.target.ring, self.target.n, [b.mat for b in self.blocks])

    def slots(self, pattern):
        """Matrices aligned with ``pattern`` (e.g. "ULUL"), identity where no block sits."""
        ident = Matrix.identity(self.target.ring, self.target.n)
        sides = [Side(c) for c in pattern.replace(" ", "")]
        out = []
        k = 0
        for side in sides:
            if k < len(self.blocks) and self.blocks[k].side is side:
                out.append(self.blocks[k].mat)
                k += 1
            else:
                out.append(ident)
        if k != len(self.blocks):
            raise BadPattern(f"pattern {self.pattern()!r} does not fit {pattern!r}")
        return out

    def padded(self, pattern):
        """Same product, identity blocks inserted so the pattern is exactly ``pattern``."""
        sides = [Side(c) for c in pattern.replace(" ", "")]
        blocks = tuple(Block(s, m) for s, m in zip(sides, self.slots(pattern)))
        return Factorisation(blocks, self.target, self.word)

    def to_json(self):
        out = {
            "pattern": self.pattern(),
            "length": self.length(),
            "blocks": [b.to_json() for b in self.blocks],
            "target": self.target.to_json(),
        }
        if self.word is not None:
            out["word"] = self.word.to_json()
        return out


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    length: int
    pattern: str
    first_violation: str | None = None

    def to_json(self):
        return {
            "ok": self.ok,
            "length": self.length,
            "pattern": self.pattern,
            "first_violation": self.first_violation,
        }


def verify_factorisation(f):
    """Check block shapes, alternation and the exact product; never raises."""
    target = f.target

    def fail(message):
        return VerificationReport(False, f.length(), f.pattern(), message)

    for k, block in enumerate(f.blocks, start=1):
        if block.mat.ring != target.ring or block.mat.n != target.n:
            return fail(f"block {k} does not match the target's ring or dimension")
        if not block.is_valid():
            return fail(f"block {k} is not {block.side.name.lower()} unitriangular")
        if k > 1 and f.blocks[k - 2].side is block.side:
            return fail(f"blocks {k - 1} and {k} share side {block.side.value}")
    if f.product() != target:
        return fail("product of blocks differs from the target")
    return VerificationReport(True, f.length(), f.pattern())


# ===========================
# JSON
# ===========================

def matrix_from_json(obj, ring=None):
    """Matrix from {"n", "ring", "entries"} or from a bare list of rows (needs ``ring``)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"matrix is not valid JSON: {exc.msg}") from exc
    if isinstance(obj, dict):
        if "ring" in obj:
            declared = ring_from_json(obj["ring"])
            if ring is not None and declared != ring:
                raise DescriptorMismatch(f"matrix declares {declared}, expected {ring}")
            ring = declared
        rows = obj.get("entries")
    else:
        rows = obj
    if ring is None:
        raise ParseError("no ring given for the matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a nonempty JSON array of arrays")
    n = len(rows)
    parsed = []
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", row=i, column=len(row))
        out = []
        for j, entry in enumerate(row, start=1):
            try:
                out.append(ring.parse(entry))
            except (ValueError, TypeError, ParseError, NotAUnit, DescriptorMismatch) as exc:
                raise ParseError(f"cannot read entry {entry!r}: {exc}", row=i, column=j) from exc
        parsed.append(tuple(out))
    return Matrix(ring, tuple(parsed))


def factorisation_from_json(obj):
    target = matrix_from_json(obj["target"])
    blocks = []
    for b in obj["blocks"]:
        blocks.append(Block(Side(b["side"]), matrix_from_json(b, target.ring)))
    return Factorisation(tuple(blocks), target)
