"""
Number theory toolkit for the Z[1/p] factoriser.

This module includes:
- A deterministic Miller-Rabin primality test (desk-scale integers).
- Factorisation by trial division and Pollard's rho (Brent's variant).
- The primitive-root test used to pick primes for the SL(2, Z[1/p]) algorithm.
- Discrete logarithms (Pohlig-Hellman with baby-step/giant-step digits).
- The prime search along an arithmetic progression c + d*k.
"""

import logging
from collections import Counter
from math import gcd, isqrt

from .errors import NoSolution, OutOfRange, SearchExhausted

_logger = logging.getLogger(__name__)

# Miller-Rabin with these bases is exact below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(q):
    """Deterministic primality test for 0 <= q < 3.3e24."""
    if q < 2:
        return False
    if q >= _MR_LIMIT:
        raise OutOfRange(f"{q} is beyond the deterministic primality range")
    for small in _SMALL_PRIMES:
        if q % small == 0:
            return q == small

    # Write q - 1 as d * 2^r with d odd
    r, d = 0, q - 1
    while d % 2 == 0:
        d //= 2
        r += 1

    for a in _MR_BASES:
        x = pow(a, d, q)
        if x == 1 or x == q - 1:
            continue
        for _ in range(r - 1):
            x = pow(x, 2, q)
            if x == q - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n):
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise OutOfRange(f"Pollard rho failed on {n}")


def factorize(m):
    """Full prime factorisation of m >= 2 as a sorted list with multiplicity."""
    if m < 2:
        raise OutOfRange(f"cannot factor {m}")
    factors = []
    for small in _SMALL_PRIMES:
        while m % small == 0:
            factors.append(small)
            m //= small

    stack = [m] if m > 1 else []
    while stack:
        n = stack.pop()
        if is_prime(n):
            factors.append(n)
            continue
        root = isqrt(n)
        if root * root == n:
            stack.extend((root, root))
            continue
        f = _pollard_brent(n)
        stack.extend((f, n // f))
    return sorted(factors)


def is_primitive_root(p, q):
    """True iff p generates the multiplicative group modulo the prime q."""
    if q < 2 or not is_prime(q):
        raise OutOfRange(f"{q} is not a prime modulus")
    if p % q == 0:
        raise OutOfRange(f"{q} divides {p}")
    if q == 2:
        return True
    order = q - 1
    for ell in set(factorize(order)):
        if pow(p, order // ell, q) == 1:
            return False
    return True


def _bsgs(g, h, q, order):
    """Smallest x in [0, order) with g^x = h (mod q), or None."""
    m = isqrt(order) + 1
    baby = {}
    value = 1
    for j in range(m):
        baby.setdefault(value, j)
        value = value * g % q

    giant = pow(g, -m, q)
    gamma = h % q
    for i in range(m + 1):
        j = baby.get(gamma)
        if j is not None and i * m + j < order:
            return i * m + j
        gamma = gamma * giant % q
    return None


def multiplicative_order(p, q):
    order = q - 1
    for ell in set(factorize(order)):
        while order % ell == 0 and pow(p, order // ell, q) == 1:
            order //= ell
    return order


def _pohlig_hellman(g, h, q):
    """x in [0, q-1) with g^x = h (mod q), for a primitive root g."""
    n = q - 1
    residues = []
    for ell, e in Counter(factorize(n)).items():
        pe = ell ** e
        gi = pow(g, n // pe, q)
        hi = pow(h, n // pe, q)
        gamma = pow(gi, ell ** (e - 1), q)
        x = 0
        for k in range(e):
            hk = pow(pow(gi, -x, q) * hi % q, ell ** (e - 1 - k), q)
            digit = _bsgs(gamma, hk, q, ell)
            if digit is None:
                raise NoSolution(f"{h} is not a power of {g} modulo {q}")
            x += digit * ell ** k
        residues.append((x, pe))

    # CRT
    x = 0
    for r, m in residues:
        rest = n // m
        x += r * rest * pow(rest, -1, m)
    return x % n


def discrete_log(p, b, q):
    """Smallest u in [1, q-1] with p^u = b (mod q).

    Pohlig-Hellman over the factorisation of q - 1 when p is a primitive root,
    plain baby-step/giant-step otherwise.
    """
    if b % q == 0:
        raise NoSolution(f"{b} is divisible by {q}")
    target = b % q
    if q == 2:
        return 1
    if target == 1:
        return multiplicative_order(p, q)

    if is_primitive_root(p, q):
        u = _pohlig_hellman(p % q, target, q)
    else:
        u = _bsgs(p % q, target, q, q - 1)
        if u is None:
            raise NoSolution(f"{b} is not a power of {p} modulo {q}")
    if pow(p, u, q) != target:
        raise NoSolution(f"{b} is not a power of {p} modulo {q}")
    return u


def find_prime_with_primitive_root(c, d, p, k_max):
    """Scan q = c + d*k for a prime with p as a primitive root.

    k runs over 1, 2, 3, ... when d > 0 and over -1, -2, ... when d < 0, so q
    grows along the scan. q = 2, q = p and primes dividing d are skipped.
    Returns (k, q); raises SearchExhausted past k_max.
    """
    if d == 0:
        raise OutOfRange("the progression step d must be nonzero")
    step = 1 if d > 0 else -1
    for n in range(1, k_max + 1):
        k = step * n
        q = c + d * k
        if q <= 2 or q == p or d % q == 0:
            continue
        if not is_prime(q):
            continue
        if p % q == 0:
            continue
        if is_primitive_root(p, q):
            _logger.debug("prime search c=%s d=%s p=%s: k=%s q=%s", c, d, p, k, q)
            return k, q
    raise SearchExhausted(k_max, c=c, d=d, p=p)
