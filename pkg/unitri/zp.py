"""
Unitriangular factorisations over Z[1/p].

SL(2, Z[1/p]) = L U L U L  u  U L U L U, with the length-5 factor built from a
prime q = c + d*k having p as a primitive root. The prime search terminates
under the Generalised Riemann Hypothesis; its bound is PRIME_SEARCH_K_MAX.
SL(n, Z[1/p]) for n > 2 folds a Euclidean elimination word through the
absorption engine with depth 3, giving at most 6 blocks.
"""

import logging
from dataclasses import dataclass, field
from functools import partial

from . import config
from .elimination import eliminate, expand_corners, fold
from .errors import (
    BadPattern,
    DescriptorMismatch,
    DimensionMismatch,
    NotSL,
    SupportViolation,
)
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
from .localized import LocalizedInteger
from .monomial import factor_monomial
from .numtheory import discrete_log, find_prime_with_primitive_root
from .rings import LocalizedIntegers

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZpTrace:
    """Prime-search record; ``multipliers`` act on the right of the input."""

    case: str
    alpha: int | None = None
    beta: int | None = None
    shift: object = None
    k: int | None = None
    q: int | None = None
    u: int | None = None
    l: int | None = None
    theta: object = None
    multipliers: tuple = field(default=(), compare=False)

    def replay(self, g):
        for t in self.multipliers:
            g = apply_transvection(g, t, "right")
        return g

    def to_json(self):
        out = {"case": self.case}
        if self.case in ("1", "2"):
            out.update({
                "alpha": self.alpha,
                "beta": self.beta,
                "shift": self.shift.to_json(),
                "k": self.k,
                "q": self.q,
                "u": self.u,
                "l": self.l,
                "theta": self.theta.to_json(),
            })
        return out


def _require_zp(g):
    if not isinstance(g.ring, LocalizedIntegers):
        raise DescriptorMismatch(f"expected a matrix over Z[1/p], got {g.ring}")
    d = det(g)
    if not d.is_one():
        raise NotSL(f"determinant is {d}, not 1")


def _t12(xi):
    return Transvection(0, 1, xi)


def _t21(xi):
    return Transvection(1, 0, xi)


def _lower_leading(g, k_max):
    """g = Lf t12(P) t21(-theta) t12(-l) t21(-K), for top row entries both nonzero."""
    ring = g.ring
    p = ring.p
    x, y = g[0, 0].value, g[0, 1].value
    alpha, a = x.v, x.a
    beta, b = y.v, y.a

    if alpha >= beta:
        c = a * p ** (alpha - beta)
        shift = ring.zero
    else:
        # x + shift*y gains valuation >= beta with shift = t0 / p^m.
        m = beta - alpha
        pm = p ** m
        t0 = (-a * pow(b, -1, pm)) % pm
        c = (a + t0 * b) // pm
        shift = ring(LocalizedInteger.make(t0, -m, p))

    k, q = find_prime_with_primitive_root(c, b, p, k_max)
    big_k = shift + ring(k)
    g1 = apply_transvection(g, _t21(big_k), "right")
    if g1[0, 0] != ring.power(beta) * ring(q):
        raise SupportViolation("prime step did not produce p^beta * q")

    u = discrete_log(p, b % q, q)
    l = (p ** u - b) // q
    g2 = apply_transvection(g1, _t12(ring(l)), "right")
    big_p = ring.power(beta + u)
    if g2[0, 1] != big_p:
        raise SupportViolation("discrete-log step did not produce p^(beta+u)")

    theta = (ring.one - ring.power(beta) * ring(q)) * ring.power(-beta - u)
    g3 = apply_transvection(g2, _t21(theta), "right")
    if not g3[0, 0].is_one():
        raise SupportViolation("theta step did not produce 1 in the corner")
    lf = apply_transvection(g3, _t12(-big_p), "right")
    if not lf.is_lower_unitriangular():
        raise SupportViolation("reduction did not end lower unitriangular")

    multipliers = (_t21(big_k), _t12(ring(l)), _t21(theta), _t12(-big_p))
    trace = ZpTrace("1", alpha, beta, shift, k, q, u, l, theta, multipliers)
    _logger.debug("zp sl2 p=%s alpha=%s beta=%s k=%s q=%s u=%s", p, alpha, beta, k, q, u)
    slots = [lf] + [t.inverse().matrix(2) for t in reversed(multipliers)]
    return Factorisation.from_slots(slots, Side.LOWER, target=g), trace


def _flip_transvection(t):
    return Transvection(1 - t.i, 1 - t.j, t.xi)


def _degenerate(g):
    """Zero-entry inputs: a unitriangular factor next to a monomial one."""
    ring = g.ring
    x, y, z, w = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    if (x.is_zero() and w.is_zero()) or (y.is_zero() and z.is_zero()):
        return factor_monomial(g)

    def upper(xi):
        return Block(Side.UPPER, _t12(xi).matrix(2))

    def lower(xi):
        return Block(Side.LOWER, _t21(xi).matrix(2))

    if y.is_zero():
        head, rest = [lower(z * x.inverse())], Matrix.diagonal(ring, [x, w])
        return _with_monomial(g, head, rest, [])
    if z.is_zero():
        rest = Matrix.diagonal(ring, [x, w])
        return _with_monomial(g, [], rest, [upper(y * x.inverse())])
    if x.is_zero():
        rest = Matrix.from_rows(ring, [[ring.zero, y], [z, ring.zero]])
        return _with_monomial(g, [], rest, [upper(w * z.inverse())])
    if w.is_zero():
        rest = Matrix.from_rows(ring, [[ring.zero, y], [z, ring.zero]])
        return _with_monomial(g, [upper(x * z.inverse())], rest, [])
    return None


def _with_monomial(g, head, rest, tail):
    middle = list(factor_monomial(rest).blocks)
    return Factorisation.from_blocks(head + middle + tail, target=g)


def factor_sl2_zp(g, k_max=None):
    """Length <= 5 factorisation of g in SL(2, Z[1/p]) with its trace."""
    _require_zp(g)
    if g.n != 2:
        raise DimensionMismatch(f"expected a 2x2 matrix, got {g.n}x{g.n}")
    k_max = config.PRIME_SEARCH_K_MAX if k_max is None else k_max

    if g.is_identity() or g.is_upper_unitriangular() or g.is_lower_unitriangular():
        side = Side.UPPER if g.is_upper_unitriangular() else Side.LOWER
        blocks = () if g.is_identity() else (Block(side, g),)
        return Factorisation(blocks, g), ZpTrace("degenerate")
    degenerate = _degenerate(g)
    if degenerate is not None:
        return degenerate, ZpTrace("degenerate")

    if g[0, 0].value.v >= g[0, 1].value.v:
        return _lower_leading(g, k_max)

    # Same argument on J g J; flipping back swaps U and U^-.
    flipped, trace = _lower_leading(g.flip(), k_max)
    blocks = tuple(Block(b.side.other, b.mat.flip()) for b in flipped.blocks)
    trace = ZpTrace(
        "2", trace.alpha, trace.beta, trace.shift, trace.k, trace.q, trace.u, trace.l,
        trace.theta, tuple(_flip_transvection(t) for t in trace.multipliers),
    )
    return Factorisation(blocks, g), trace


def _levi_zp(h, k_max):
    return factor_sl2_zp(h, k_max)[0]


def factor_sl_n_zp(g, k_max=None):
    """At most 6 alternating blocks for g in SL(n, Z[1/p])."""
    _require_zp(g)
    if g.n == 2:
        f, _ = factor_sl2_zp(g, k_max)
        if f.length() < 5:
            return f
        try:
            return f.padded("ULULUL")
        except BadPattern:
            return f.padded("LULULU")

    if g.is_identity():
        return Factorisation((), g)
    if g.is_upper_unitriangular():
        return Factorisation((Block(Side.UPPER, g),), g)
    if g.is_lower_unitriangular():
        return Factorisation((Block(Side.LOWER, g),), g)

    word = expand_corners(eliminate(g))
    nf = fold(word, config.ZP_DEPTH, partial(_levi_zp, k_max=k_max))
    f = nf.to_factorisation(target=g, word=word)
    if f.product() != g:
        raise SupportViolation("absorbed normal form does not reproduce the input")
    _logger.info("factor_sl_n_zp %dx%d over %s: %s", g.n, g.n, g.ring, f.pattern())
    return f


def random_zp_word(ring, n, length, rng, max_coeff=3, max_exp=2):
    """Bounded random word of letters t_ij(c * p^e), |c| <= max_coeff, |e| <= max_exp."""
    letters = []
    for _ in range(length):
        i, j = rng.sample(range(n), 2)
        xi = ring.power(rng.randint(-max_exp, max_exp)) * ring(rng.randint(-max_coeff, max_coeff))
        letters.append(Transvection(i, j, xi))
    return TransvectionWord(ring, n, tuple(letters))
