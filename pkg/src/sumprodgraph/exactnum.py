"""Exact numbers: reduced rationals, least prime factors, primes and integer roots.

Rationals are ``fractions.Fraction`` throughout. A Fraction is always stored in
lowest terms with a positive denominator and hashes by value, which is exactly
what distinct-value counting needs.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import numpy as np

BigRat = Fraction

#: lpf(1): 1 has no prime factor, so every test ``lpf(u) > t`` passes.
INFINITY = math.inf


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` or ``"0.75"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or a Fraction")
    return Fraction(x)


class PrimeTable:
    """Smallest-prime-factor table for 2 <= x <= limit."""

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("limit must be >= 1")
        self.limit = int(limit)
        spf = np.arange(self.limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(self.limit) + 1):
            if spf[p] != p:
                continue
            multiples = spf[p * p::p]
            unmarked = multiples == np.arange(p * p, self.limit + 1, p)
            multiples[unmarked] = p
        self.spf = spf
        self.primes = np.flatnonzero(spf[2:] == np.arange(2, self.limit + 1)) + 2

    def __contains__(self, x: int) -> bool:
        return 2 <= x <= self.limit

    def lpf(self, u: int):
        if u < 1:
            raise ValueError(f"lpf undefined for {u}")
        if u == 1:
            return INFINITY
        if u <= self.limit:
            return int(self.spf[u])
        for p in self.primes:
            p = int(p)
            if p * p > u:
                return u
            if u % p == 0:
                return p
        return _trial_lpf(u, start=int(self.primes[-1]) + 1 if len(self.primes) else 2)


def _trial_lpf(u: int, start: int = 2) -> int:
    if start <= 2:
        if u % 2 == 0:
            return 2
        start = 3
    d = start | 1
    while d * d <= u:
        if u % d == 0:
            return d
        d += 2
    return u


def _sieve_flags(limit: int) -> np.ndarray:
    """Boolean primality flags for 0..limit (Eratosthenes)."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return flags


_table: PrimeTable | None = None


def prime_table(limit: int) -> PrimeTable:
    """Shared table covering at least ``limit``; rebuilt (doubled) on demand."""
    global _table
    if _table is None or _table.limit < limit:
        size = max(limit, 2 * _table.limit if _table else 1 << 16)
        _table = PrimeTable(size)
    return _table


def lpf(u: int, table: PrimeTable | None = None):
    """Least prime factor of ``u``; ``INFINITY`` for u = 1."""
    if u < 1:
        raise ValueError(f"lpf undefined for {u}")
    if u == 1:
        return INFINITY
    table = table or prime_table(min(u, 1 << 20))
    return table.lpf(u)


def coprime(v: int, w: int) -> bool:
    if v < 1 or w < 1:
        raise ValueError("coprime() takes positive integers")
    return math.gcd(v, w) == 1


def first_primes(count: int) -> list[int]:
    """The first ``count`` primes in increasing order."""
    if count < 1:
        raise ValueError("count must be >= 1")
    # p_k < k (ln k + ln ln k) for k >= 6
    limit = 15 if count < 6 else int(count * (math.log(count) + math.log(math.log(count)))) + 1
    flags = _sieve_flags(limit)
    return [int(p) for p in np.flatnonzero(flags)[:count]]


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    return lpf(x) == x


def next_prime(x: int) -> int:
    """Smallest prime >= x."""
    x = max(x, 2)
    while not is_prime(x):
        x += 1
    return x


def primes_upto(limit: int) -> list[int]:
    if limit < 2:
        return []
    return [int(p) for p in np.flatnonzero(_sieve_flags(limit))]


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for integers x >= 0, k >= 1 (Newton, exact)."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    r = 1 << -(-x.bit_length() // k)
    while True:
        y = ((k - 1) * r + x // r ** (k - 1)) // k
        if y >= r:
            return r
        r = y


def floor_power(n: int, e) -> int:
    """floor(n ** e) for integer n >= 1 and rational e >= 0."""
    e = as_rat(e)
    if n < 1 or e < 0:
        raise ValueError("floor_power needs n >= 1 and e >= 0")
    return iroot(n ** e.numerator, e.denominator)


def power_le(x, base, e) -> bool:
    """Exact test x <= base ** e for x >= 0, base > 0 and rational e."""
    x, base, e = as_rat(x), as_rat(base), as_rat(e)
    if x < 0 or base <= 0:
        raise ValueError("power_le needs x >= 0 and base > 0")
    return x ** e.denominator <= base ** e.numerator


def ceil_power_product(factors) -> int:
    """Smallest integer T >= prod(b ** e) over ``(b, e)`` pairs, b > 0 rational, e rational."""
    factors = [(as_rat(b), as_rat(e)) for b, e in factors]
    lcm = reduce(math.lcm, (e.denominator for _, e in factors), 1)
    target = Fraction(1)
    for b, e in factors:
        target *= b ** (e * lcm).numerator
    a, b = target.numerator, target.denominator
    t = iroot(a * b ** (lcm - 1), lcm) // b
    return t if Fraction(t) ** lcm >= target else t + 1
