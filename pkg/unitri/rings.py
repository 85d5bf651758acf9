"""
Commutative rings with exact arithmetic.

Concrete rings: Z/m, GF(p), Q, Z, Z[1/p] and finite direct products of Z/m.
Rings are frozen dataclasses, so descriptor equality is structural; elements
carry their ring and refuse to mix with elements of another ring.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .errors import (
    CapabilityMissing,
    DescriptorMismatch,
    NotAUnit,
    NotUnimodular,
    ParseError,
)
from .localized import LocalizedInteger
from .numtheory import is_prime

_logger = logging.getLogger(__name__)

_ZP_STRING = re.compile(r"^\s*([+-]?\d+)\s*\*\s*(\d+)\s*\^\s*([+-]?\d+)\s*$")


@dataclass(frozen=True, slots=True)
class RingElement:
    ring: Ring
    value: object

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise DescriptorMismatch(f"cannot combine {self.ring} with {other.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring.canon(other)
        return None

    def __add__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.value, value))

    __radd__ = __add__

    def __sub__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(self.value, value))

    def __rsub__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(value, self.value))

    def __mul__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return RingElement(self.ring, self.ring.mul(self.value, value))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ring.canon(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def is_zero(self):
        return self.value == self.ring.canon(0)

    def is_one(self):
        return self.value == self.ring.canon(1)

    def is_unit(self):
        return self.ring.is_unit_value(self.value)

    def inverse(self):
        if not self.ring.is_unit_value(self.value):
            raise NotAUnit(f"{self} is not a unit of {self.ring}")
        return RingElement(self.ring, self.ring.inverse_value(self.value))

    def to_json(self):
        return self.ring.format_value(self.value)

    def __str__(self):
        return self.ring.show_value(self.value)

    def __repr__(self):
        return f"{self.ring}({self})"


class Ring:
    """Shared behaviour; subclasses implement the payload-level hooks."""

    has_sr1 = False
    is_euclidean = False
    is_finite = False

    # --- payload hooks -----------------------------------------------------

    def canon(self, value):
        raise NotImplementedError

    def add(self, x, y):
        return self.canon(x + y)

    def sub(self, x, y):
        return self.canon(x - y)

    def mul(self, x, y):
        return self.canon(x * y)

    def neg(self, x):
        return self.canon(-x)

    def is_unit_value(self, x):
        raise NotImplementedError

    def inverse_value(self, x):
        raise NotImplementedError

    def format_value(self, x):
        return str(x)

    def show_value(self, x):
        return str(x)

    # --- element API -------------------------------------------------------

    def __call__(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise DescriptorMismatch(f"{value!r} does not belong to {self}")
            return value
        return RingElement(self, self.canon(value))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_unimodular(self, elements):
        """True iff the elements generate the unit ideal."""
        raise NotImplementedError

    def parse(self, obj):
        """Element from a JSON value or CLI token; raises ValueError."""
        if isinstance(obj, bool):
            raise ValueError(f"unexpected boolean {obj!r}")
        if isinstance(obj, int):
            return self(obj)
        if isinstance(obj, str):
            text = obj.strip()
            if "/" in text:
                num, den = text.split("/", 1)
                return self(int(num)) * self(int(den)).inverse()
            return self(int(text))
        raise ValueError(f"cannot read {obj!r} as an element of {self}")

    def random_element(self, rng):
        raise NotImplementedError

    def elements(self):
        raise CapabilityMissing(f"{self} is not finite")

    @property
    def size(self):
        raise CapabilityMissing(f"{self} is not finite")

    # --- stable rank one ---------------------------------------------------

    def _witness_candidates(self):
        raise CapabilityMissing(f"{self} is not declared stable rank 1")

    def _require_sr1(self):
        if not self.has_sr1:
            raise CapabilityMissing(f"{self} is not declared stable rank 1")

    def sr1_witness(self, c, d):
        """First z (in the ring's scan order) with c + d*z a unit."""
        self._require_sr1()
        c, d = self(c), self(d)
        if not self.is_unimodular([c, d]):
            raise NotUnimodular(f"({c}, {d}) does not generate {self}")
        for z in self._witness_candidates():
            if (c + d * z).is_unit():
                _logger.debug("sr1 witness over %s for (%s, %s): %s", self, c, d, z)
                return z
        raise NotUnimodular(f"no witness for ({c}, {d}) over {self}")

    def sr1_witness_vec(self, cs, d):
        """z with d + sum(c_i * z_i) a unit, fixing coordinates right to left.

        Coordinate i is the first candidate with (c_1, ..., c_{i-1}, d + c_i z)
        unimodular, i.e. the scalar witness in the quotient by the ideal of the
        coordinates still to the left.
        """
        self._require_sr1()
        cs = [self(c) for c in cs]
        d = self(d)
        if not self.is_unimodular(cs + [d]):
            raise NotUnimodular(f"({', '.join(map(str, cs))}; {d}) is not unimodular")
        zs = [self.zero] * len(cs)
        for i in range(len(cs) - 1, -1, -1):
            rest = cs[:i]
            for z in self._witness_candidates():
                candidate = d + cs[i] * z
                if self.is_unimodular(rest + [candidate]):
                    zs[i] = z
                    d = candidate
                    break
            else:
                raise NotUnimodular(f"no witness for coordinate {i + 1} over {self}")
        return zs

    # --- descriptors -------------------------------------------------------

    def to_json(self):
        raise NotImplementedError

    def spec(self):
        """Compact command-line form, e.g. ``zmod:5``."""
        raise NotImplementedError


def _integral(value):
    """int(value), refusing a Fraction or float that is not a whole number."""
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ParseError(f"{value} is not an integer")
        return value.numerator
    if isinstance(value, float) and not value.is_integer():
        raise ParseError(f"{value} is not an integer")
    return int(value)


# ===========================
# FINITE RINGS
# ===========================

@dataclass(frozen=True)
class Zmod(Ring):
    m: int

    has_sr1 = True
    is_finite = True

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"Zmod requires m >= 2, got {self.m}")

    def canon(self, value):
        return _integral(value) % self.m

    def is_unit_value(self, x):
        return gcd(x, self.m) == 1

    def inverse_value(self, x):
        return pow(x, -1, self.m)

    def is_unimodular(self, elements):
        return gcd(self.m, *(e.value for e in elements)) == 1

    def _witness_candidates(self):
        return (RingElement(self, z) for z in range(self.m))

    def elements(self):
        return [RingElement(self, x) for x in range(self.m)]

    @property
    def size(self):
        return self.m

    def random_element(self, rng):
        return RingElement(self, rng.randrange(self.m))

    def to_json(self):
        return {"ring": "zmod", "m": self.m}

    def spec(self):
        return f"zmod:{self.m}"

    def __str__(self):
        return f"Z/{self.m}"


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int

    has_sr1 = True
    is_finite = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"PrimeField requires a prime, got {self.p}")

    def canon(self, value):
        return _integral(value) % self.p

    def is_unit_value(self, x):
        return x != 0

    def inverse_value(self, x):
        return pow(x, -1, self.p)

    def is_unimodular(self, elements):
        return any(e.value != 0 for e in elements)

    def _witness_candidates(self):
        # c unit -> 0; c = 0 forces d != 0 -> 1.
        return (self.zero, self.one)

    def elements(self):
        return [RingElement(self, x) for x in range(self.p)]

    @property
    def size(self):
        return self.p

    def random_element(self, rng):
        return RingElement(self, rng.randrange(self.p))

    def to_json(self):
        return {"ring": "gf", "p": self.p}

    def spec(self):
        return f"gf:{self.p}"

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class DirectProduct(Ring):
    """Finite product of Z/m rings; semilocal, hence stable rank 1."""

    factors: tuple

    has_sr1 = True
    is_finite = True

    def __post_init__(self):
        if not self.factors or not all(isinstance(f, Zmod) for f in self.factors):
            raise ValueError("DirectProduct takes a nonempty list of Zmod factors")

    def canon(self, value):
        if isinstance(value, int):
            value = (value,) * len(self.factors)
        if len(value) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} components, got {len(value)}")
        return tuple(f.canon(x) for f, x in zip(self.factors, value))

    def add(self, x, y):
        return tuple((a + b) % f.m for f, a, b in zip(self.factors, x, y))

    def sub(self, x, y):
        return tuple((a - b) % f.m for f, a, b in zip(self.factors, x, y))

    def mul(self, x, y):
        return tuple((a * b) % f.m for f, a, b in zip(self.factors, x, y))

    def neg(self, x):
        return tuple((-a) % f.m for f, a in zip(self.factors, x))

    def is_unit_value(self, x):
        return all(gcd(a, f.m) == 1 for f, a in zip(self.factors, x))

    def inverse_value(self, x):
        return tuple(pow(a, -1, f.m) for f, a in zip(self.factors, x))

    def component(self, element, i):
        return self.factors[i](element.value[i])

    def is_unimodular(self, elements):
        return all(
            f.is_unimodular([self.component(e, i) for e in elements])
            for i, f in enumerate(self.factors)
        )

    def sr1_witness(self, c, d):
        c, d = self(c), self(d)
        if not self.is_unimodular([c, d]):
            raise NotUnimodular(f"({c}, {d}) does not generate {self}")
        parts = [
            f.sr1_witness(self.component(c, i), self.component(d, i))
            for i, f in enumerate(self.factors)
        ]
        return self(tuple(z.value for z in parts))

    def sr1_witness_vec(self, cs, d):
        cs = [self(c) for c in cs]
        d = self(d)
        if not self.is_unimodular(cs + [d]):
            raise NotUnimodular("vector is not unimodular")
        per_factor = [
            f.sr1_witness_vec([self.component(c, i) for c in cs], self.component(d, i))
            for i, f in enumerate(self.factors)
        ]
        return [
            self(tuple(per_factor[i][k].value for i in range(len(self.factors))))
            for k in range(len(cs))
        ]

    def elements(self):
        ranges = [range(f.m) for f in self.factors]
        return [RingElement(self, t) for t in itertools.product(*ranges)]

    @property
    def size(self):
        return prod(f.m for f in self.factors)

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            return self(tuple(int(x) for x in obj))
        return super().parse(obj)

    def random_element(self, rng):
        return RingElement(self, tuple(rng.randrange(f.m) for f in self.factors))

    def format_value(self, x):
        return [str(a) for a in x]

    def show_value(self, x):
        return "(" + ",".join(str(a) for a in x) + ")"

    def to_json(self):
        return {"ring": "product", "factors": [f.to_json() for f in self.factors]}

    def spec(self):
        return "product:" + ",".join(f.spec() for f in self.factors)

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)


# ===========================
# INFINITE RINGS
# ===========================

@dataclass(frozen=True)
class Rationals(Ring):
    has_sr1 = True

    def canon(self, value):
        return Fraction(value)

    def is_unit_value(self, x):
        return x != 0

    def inverse_value(self, x):
        return 1 / x

    def is_unimodular(self, elements):
        return any(e.value != 0 for e in elements)

    def _witness_candidates(self):
        return (self.zero, self.one)

    def parse(self, obj):
        if isinstance(obj, str):
            try:
                return self(Fraction(obj.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"cannot read {obj!r} as a rational") from exc
        return super().parse(obj)

    def random_element(self, rng):
        return self(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))

    def format_value(self, x):
        return str(x)

    def to_json(self):
        return {"ring": "q"}

    def spec(self):
        return "q"

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class Integers(Ring):
    """Z: Euclidean, but sr(Z) = 2, so no stable-rank-1 witness."""

    is_euclidean = True

    def canon(self, value):
        return _integral(value)

    def is_unit_value(self, x):
        return x in (1, -1)

    def inverse_value(self, x):
        return x

    def is_unimodular(self, elements):
        return gcd(*(e.value for e in elements)) == 1

    def euclid_norm(self, x):
        return abs(x.value)

    def quotient(self, x, y):
        return self(x.value // y.value)

    def random_element(self, rng):
        return self(rng.randint(-9, 9))

    def to_json(self):
        return {"ring": "z"}

    def spec(self):
        return "z"

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class LocalizedIntegers(Ring):
    """Z[1/p]: Euclidean with units +-p^k; not stable rank 1."""

    p: int

    is_euclidean = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"LocalizedIntegers requires a prime, got {self.p}")

    def canon(self, value):
        if isinstance(value, LocalizedInteger):
            if value.p != self.p:
                raise DescriptorMismatch(f"{value} is not in Z[1/{self.p}]")
            return value
        if isinstance(value, Fraction):
            return LocalizedInteger.from_fraction(value, self.p)
        return LocalizedInteger.from_int(int(value), self.p)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def is_unit_value(self, x):
        return x.is_unit()

    def inverse_value(self, x):
        return x.inverse()

    def is_unimodular(self, elements):
        return gcd(*(e.value.a for e in elements)) == 1

    def euclid_norm(self, x):
        return x.value.euclid_norm()

    def quotient(self, x, y):
        return RingElement(self, x.value.quotient(y.value))

    def power(self, v):
        """The unit p^v."""
        return RingElement(self, LocalizedInteger(1, v, self.p))

    def parse(self, obj):
        if isinstance(obj, dict):
            try:
                return self(LocalizedInteger.make(int(obj["a"]), int(obj["v"]), self.p))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"expected {{'a', 'v'}}, got {obj!r}") from exc
        if isinstance(obj, str):
            match = _ZP_STRING.match(obj)
            if match:
                a, base, v = (int(g) for g in match.groups())
                if base != self.p:
                    raise ValueError(f"{obj!r} uses base {base}, expected {self.p}")
                return self(LocalizedInteger.make(a, v, self.p))
            try:
                return self(Fraction(obj.strip()))
            except ZeroDivisionError as exc:
                raise ValueError(f"cannot read {obj!r}") from exc
        return super().parse(obj)

    def random_element(self, rng):
        return self(LocalizedInteger.make(rng.randint(-3, 3), rng.randint(-2, 2), self.p))

    def format_value(self, x):
        return {"a": str(x.a), "v": x.v}

    def show_value(self, x):
        frac = x.to_fraction()
        return str(frac)

    def to_json(self):
        return {"ring": "zp", "p": self.p}

    def spec(self):
        return f"zp:{self.p}"

    def __str__(self):
        return f"Z[1/{self.p}]"


# ===========================
# DESCRIPTORS
# ===========================

def ring_from_json(obj):
    """Ring from its JSON descriptor."""
    try:
        kind = obj["ring"]
        if kind == "zmod":
            return Zmod(int(obj["m"]))
        if kind == "gf":
            return PrimeField(int(obj["p"]))
        if kind == "q":
            return Rationals()
        if kind == "z":
            return Integers()
        if kind == "zp":
            return LocalizedIntegers(int(obj["p"]))
        if kind == "product":
            return DirectProduct(tuple(ring_from_json(f) for f in obj["factors"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad ring descriptor {obj!r}: {exc}") from exc
    raise ParseError(f"unknown ring kind {kind!r}")


def ring_from_spec(text):
    """Ring from its compact form: zmod:m, gf:p, q, z, zp:p, product:zmod:2,zmod:3."""
    text = text.strip().lower()
    try:
        if text == "q":
            return Rationals()
        if text == "z":
            return Integers()
        kind, _, rest = text.partition(":")
        if kind == "zmod":
            return Zmod(int(rest))
        if kind == "gf":
            return PrimeField(int(rest))
        if kind == "zp":
            return LocalizedIntegers(int(rest))
        if kind == "product":
            factors = [ring_from_spec(part) for part in rest.split(",")]
            return DirectProduct(tuple(factors))
    except ValueError as exc:
        raise ParseError(f"bad ring {text!r}: {exc}") from exc
    raise ParseError(f"unknown ring {text!r}")


# ===========================
# OPERATIONS
# ===========================

def arith(a, b, op):
    """Exact add/sub/mul/neg of elements of one ring (b is ignored for neg)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def is_unit(a):
    return a.is_unit()


def invert(a):
    return a.inverse()


def sr1_witness(c, d):
    return c.ring.sr1_witness(c, d)


def sr1_witness_vec(cs, d):
    return d.ring.sr1_witness_vec(cs, d)
