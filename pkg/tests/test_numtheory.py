import pytest
import sympy
from sympy.ntheory import factorint
from sympy.ntheory import is_primitive_root as sympy_is_primitive_root

from unitri.errors import NoSolution, OutOfRange, SearchExhausted
from unitri.numtheory import (
    discrete_log,
    factorize,
    find_prime_with_primitive_root,
    is_prime,
    is_primitive_root,
    multiplicative_order,
)


def test_is_prime_matches_sympy():
    for q in range(0, 3000):
        assert is_prime(q) == sympy.isprime(q)
    for q in (1000000007, 998244353, 2 ** 61 - 1, 561, 3215031751):
        assert is_prime(q) == sympy.isprime(q)


def test_factorize_matches_sympy(rng):
    assert factorize(12) == [2, 2, 3]
    for _ in range(100):
        m = rng.randint(2, 10 ** 12)
        expected = sorted(p for p, e in factorint(m).items() for _ in range(e))
        assert factorize(m) == expected
    with pytest.raises(OutOfRange):
        factorize(1)


def test_primitive_roots():
    assert is_primitive_root(2, 13)
    assert not is_primitive_root(2, 7)
    assert is_primitive_root(3, 2)
    for q in (3, 5, 7, 11, 13, 101, 1009):
        for p in (2, 3, 5, 7):
            if p % q:
                assert is_primitive_root(p, q) == sympy_is_primitive_root(p, q)
    with pytest.raises(OutOfRange):
        is_primitive_root(2, 15)
    with pytest.raises(OutOfRange):
        is_primitive_root(7, 7)


def test_multiplicative_order():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(2, 13) == 12


def test_discrete_log_examples():
    assert discrete_log(2, 3, 13) == 4
    assert discrete_log(2, 2, 13) == 1
    # b = 1 gives the order, not 0.
    assert discrete_log(2, 1, 13) == 12
    assert discrete_log(2, 4, 7) == 2
    with pytest.raises(NoSolution):
        discrete_log(2, 3, 7)
    with pytest.raises(NoSolution):
        discrete_log(2, 13, 13)


def test_discrete_log_large_prime():
    q = 1000000007
    b = pow(5, 123456789, q)
    assert discrete_log(5, b, q) == 123456789


def test_discrete_log_random(rng):
    for q in (101, 1009, 7919, 104729):
        for _ in range(30):
            b = rng.randint(1, q - 1)
            try:
                u = discrete_log(2, b, q)
            except NoSolution:
                assert sympy.ntheory.n_order(2, q) != q - 1
                continue
            assert 1 <= u <= q - 1
            assert pow(2, u, q) == b


def test_prime_search_examples():
    assert find_prime_with_primitive_root(1, 3, 2, 100) == (4, 13)
    assert find_prime_with_primitive_root(2, 5, 3, 100) == (1, 7)
    # 23 is skipped: 2 has order 11 there.
    assert find_prime_with_primitive_root(20, -3, 2, 100) == (-3, 29)


def test_prime_search_result_is_valid(rng):
    for _ in range(50):
        p = rng.choice([2, 3, 5, 7])
        c = rng.randint(-100, 100)
        d = rng.choice([-1, 1]) * rng.randint(1, 30)
        if d % p == 0:
            continue
        try:
            k, q = find_prime_with_primitive_root(c, d, p, 10000)
        except SearchExhausted:
            continue
        assert q == c + d * k and k * d > 0
        assert sympy.isprime(q) and q != p
        assert sympy.ntheory.n_order(p, q) == q - 1


def test_prime_search_exhausted():
    with pytest.raises(SearchExhausted) as info:
        find_prime_with_primitive_root(1, 3, 2, 0)
    assert info.value.k_max == 0
    with pytest.raises(OutOfRange):
        find_prime_with_primitive_root(1, 0, 2, 10)
