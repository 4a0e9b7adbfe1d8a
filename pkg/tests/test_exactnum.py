import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sumprodgraph import oracles
from sumprodgraph.exactnum import (
    INFINITY,
    PrimeTable,
    as_rat,
    ceil_power_product,
    coprime,
    first_primes,
    floor_power,
    iroot,
    is_prime,
    lpf,
    next_prime,
    power_le,
    primes_upto,
)

rats = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


def test_lpf_examples():
    assert lpf(1) == INFINITY
    assert lpf(2) == 2
    assert lpf(15) == 3 == oracles.trial_lpf(15)


def test_lpf_rejects_zero():
    with pytest.raises(ValueError):
        lpf(0)


def test_prime_table_against_trial_division():
    t = PrimeTable(2000)
    for u in range(2, 2001):
        assert t.lpf(u) == oracles.trial_lpf(u)


@given(st.integers(2, 10**7))
def test_lpf_divides(u):
    p = lpf(u)
    assert u % p == 0
    assert p * p <= u or p == u


def test_lpf_above_table_falls_back():
    big = 1_000_003 * 1_000_033
    assert lpf(big) == 1_000_003


def test_coprime_examples():
    assert coprime(1, 1)
    assert not coprime(2, 4)
    assert coprime(9, 10) == (math.gcd(9, 10) == 1)
    with pytest.raises(ValueError):
        coprime(0, 3)


def test_first_primes():
    assert first_primes(1) == [2]
    assert first_primes(4) == [2, 3, 5, 7]
    assert first_primes(10)[-1] == 29
    assert first_primes(300) == oracles.sieve_primes(300)


def test_prime_helpers():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**31 - 1) and not is_prime(2**31 + 1)
    assert next_prime(90) == 97


def test_as_rat_rejects_floats():
    assert as_rat(3) == Fraction(3)
    assert as_rat("2/4") == Fraction(1, 2)
    with pytest.raises(TypeError):
        as_rat(0.5)


@given(rats, rats)
def test_field_round_trips(a, b):
    for x in (a + b, a * b):
        assert math.gcd(x.numerator, x.denominator) == 1 and x.denominator >= 1
    assert (a + b) - b == a
    if b:
        assert (a * b) / b == a


@given(rats)
def test_reduction_idempotent_and_hash(a):
    assert Fraction(a.numerator, a.denominator) == a
    same = Fraction(a.numerator * 7, a.denominator * 7)
    assert same == a and hash(same) == hash(a)


@given(st.integers(0, 10**30), st.integers(1, 7))
def test_iroot(x, k):
    r = iroot(x, k)
    assert r ** k <= x < (r + 1) ** k


def test_floor_power_and_power_le():
    assert floor_power(4096, Fraction(1, 6)) == 4
    assert floor_power(4096, Fraction(2, 3)) == 256
    assert floor_power(4096, Fraction(4, 3)) == 65536
    assert power_le(65536, 4096, Fraction(4, 3))
    assert not power_le(65537, 4096, Fraction(4, 3))
    assert power_le(Fraction(1, 2), 4, Fraction(-1, 2))


@given(st.integers(2, 10**6), st.fractions(0, 3, max_denominator=12))
def test_floor_power_is_floor(n, e):
    f = floor_power(n, e)
    assert power_le(f, n, e) and not power_le(f + 1, n, e)


def test_ceil_power_product():
    # 8^(1/3) * 9^(1/2) = 6
    assert ceil_power_product([(8, Fraction(1, 3)), (9, Fraction(1, 2))]) == 6
    assert ceil_power_product([(2, Fraction(1, 2))]) == 2
