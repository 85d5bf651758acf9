"""
Elements of Z[1/p] kept in the canonical form a * p^v with p not dividing a.
"""

from dataclasses import dataclass
from fractions import Fraction


def _strip(a, p):
    """Split a nonzero integer as (a', e) with a = a' * p^e and p not dividing a'."""
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    return a, e


@dataclass(frozen=True)
class LocalizedInteger:
    a: int
    v: int
    p: int

    @classmethod
    def make(cls, a, v, p):
        """Normalise a * p^v."""
        if a == 0:
            return cls(0, 0, p)
        a, e = _strip(a, p)
        return cls(a, v + e, p)

    @classmethod
    def from_int(cls, n, p):
        return cls.make(n, 0, p)

    @classmethod
    def from_fraction(cls, value, p):
        """Embed a rational whose denominator is a power of p."""
        value = Fraction(value)
        den, e = _strip(value.denominator, p)
        if den != 1:
            raise ValueError(f"{value} is not in Z[1/{p}]")
        return cls.make(value.numerator, -e, p)

    def to_fraction(self):
        if self.v >= 0:
            return Fraction(self.a * self.p ** self.v)
        return Fraction(self.a, self.p ** (-self.v))

    def valuation(self):
        return self.v

    def is_zero(self):
        return self.a == 0

    def is_unit(self):
        return self.a in (1, -1)

    def __add__(self, other):
        if self.a == 0:
            return other
        if other.a == 0:
            return self
        v = min(self.v, other.v)
        a = self.a * self.p ** (self.v - v) + other.a * self.p ** (other.v - v)
        return LocalizedInteger.make(a, v, self.p)

    def __neg__(self):
        return LocalizedInteger(-self.a, self.v, self.p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.a == 0 or other.a == 0:
            return LocalizedInteger(0, 0, self.p)
        return LocalizedInteger(self.a * other.a, self.v + other.v, self.p)

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of Z[1/{self.p}]")
        return LocalizedInteger(self.a, -self.v, self.p)

    def euclid_norm(self):
        return abs(self.a)

    def quotient(self, other):
        """q with norm(self - q*other) < norm(other)."""
        return LocalizedInteger.make(self.a // other.a, self.v - other.v, self.p)

    def __str__(self):
        if self.v == 0:
            return str(self.a)
        return f"{self.a}*{self.p}^{self.v}"
