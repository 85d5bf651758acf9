"""
SL(2, R) over stable-rank-one rings: the length-4 factorisation, torus and Weyl identities.
"""

import logging
from dataclasses import dataclass

from .errors import CapabilityMissing, DimensionMismatch, NotAUnit, NotSL
from .exactmat import (
    Block,
    Factorisation,
    Matrix,
    Side,
    Transvection,
    TransvectionWord,
    apply_transvection,
    det,
)

_logger = logging.getLogger(__name__)


def t12(xi):
    return Transvection(0, 1, xi)


def t21(xi):
    return Transvection(1, 0, xi)


@dataclass(frozen=True)
class Sl2Trace:
    """Right multipliers t21(z), t12(l), t21(theta) reducing g to t12(b)."""

    z: object
    l: object
    theta: object
    b: object

    def replay(self, g):
        for t in (t21(self.z), t12(self.l), t21(self.theta)):
            g = apply_transvection(g, t, "right")
        return g

    def to_json(self):
        return {
            "z": self.z.to_json(),
            "l": self.l.to_json(),
            "theta": self.theta.to_json(),
            "b": self.b.to_json(),
        }


def _word_factorisation(letters, target, leading=Side.UPPER):
    ring = target.ring
    word = TransvectionWord(ring, target.n, tuple(letters))
    slots = [t.matrix(target.n) for t in letters]
    return Factorisation.from_slots(slots, leading=leading, target=target, word=word)


def _check_sl2(g):
    if g.n != 2:
        raise DimensionMismatch(f"expected a 2x2 matrix, got {g.n}x{g.n}")
    d = det(g)
    if not d.is_one():
        raise NotSL(f"determinant is {d}, not 1")


def _trivial(g):
    """Already unitriangular (or identity): one block or none."""
    if g.is_identity():
        return Factorisation((), g)
    if g.is_upper_unitriangular():
        return Factorisation((Block(Side.UPPER, g),), g)
    if g.is_lower_unitriangular():
        return Factorisation((Block(Side.LOWER, g),), g)
    return None


def factor_sl2_traced(g):
    """Length <= 4 factorisation t12(b) t21(-theta) t12(-l) t21(-z) with its trace."""
    _check_sl2(g)
    trivial = _trivial(g)
    if trivial is not None:
        return trivial, None
    ring = g.ring
    if not ring.has_sr1:
        raise CapabilityMissing(f"{ring} is not declared stable rank 1")

    c, d = g[1, 0], g[1, 1]
    z = ring.sr1_witness(c, d)
    g1 = apply_transvection(g, t21(z), "right")
    c1 = g1[1, 0]
    l = c1.inverse() * (ring.one - d)
    g2 = apply_transvection(g1, t12(l), "right")
    theta = -c1
    g3 = apply_transvection(g2, t21(theta), "right")
    b = g3[0, 1]
    trace = Sl2Trace(z, l, theta, b)
    _logger.debug("sl2 over %s: z=%s l=%s theta=%s b=%s", ring, z, l, theta, b)

    letters = [t12(b), t21(-theta), t12(-l), t21(-z)]
    return _word_factorisation(letters, g), trace


def factor_sl2(g, leading="U"):
    """SL(2, R) = U L U L for sr(R) = 1; ``leading="L"`` gives the mirrored L U L U form."""
    if leading == "L":
        _check_sl2(g)
        flipped, _ = factor_sl2_traced(g.flip())
        blocks = tuple(Block(b.side.other, b.mat.flip()) for b in flipped.blocks)
        return Factorisation(blocks, g)
    f, _ = factor_sl2_traced(g)
    return f


# ===========================
# TORUS & WEYL ELEMENTS
# ===========================

def _require_unit(eps):
    if not eps.is_unit():
        raise NotAUnit(f"{eps} is not a unit of {eps.ring}")
    return eps.inverse()


def _diag(eps, inv):
    return Matrix.diagonal(eps.ring, [eps, inv])


def torus4(eps):
    """diag(eps, 1/eps) = t12(-1) t21(1 - eps) t12(1/eps) t21(eps (eps - 1))."""
    inv = _require_unit(eps)
    one = eps.ring.one
    letters = [t12(-one), t21(one - eps), t12(inv), t21(eps * (eps - one))]
    return _word_factorisation(letters, _diag(eps, inv))


def torus5(eps):
    """diag(eps, 1/eps) = w(eps) w(1)^-1 written as five alternating letters."""
    inv = _require_unit(eps)
    one = eps.ring.one
    letters = [t12(eps), t21(-inv), t12(eps - one), t21(one), t12(-one)]
    return _word_factorisation(letters, _diag(eps, inv))


def weyl(eps):
    """w(eps) = t12(eps) t21(-1/eps) t12(eps) = [[0, eps], [-1/eps, 0]]."""
    inv = _require_unit(eps)
    letters = [t12(eps), t21(-inv), t12(eps)]
    word = TransvectionWord(eps.ring, 2, tuple(letters))
    target = word.product()
    return target, _word_factorisation(letters, target)
