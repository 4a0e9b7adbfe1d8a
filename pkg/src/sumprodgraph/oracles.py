"""Brute-force reference implementations.

Everything here enumerates definitions directly with Python ints and
Fractions and avoids the numpy engine, chunking and block graphs. The
functions are slow and only meant for small parameters. ``verify`` and the
test-suite compare them against the fast paths.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np


def trial_lpf(u: int) -> int:
    for d in range(2, u + 1):
        if u % d == 0:
            return d
    raise ValueError(u)


def sieve_primes(count: int) -> list[int]:
    out, x = [], 2
    while len(out) < count:
        if all(x % p for p in out if p * p <= x):
            out.append(x)
        x += 1
    return out


def edge_values(edges, mode: str) -> Counter:
    """Counter of edge values over an iterable of (a, b) value pairs (unordered edges)."""
    c = Counter()
    for a, b in edges:
        if mode == "sum":
            c[a + b] += 1
        elif mode == "product":
            c[a * b] += 1
        elif mode == "ratio":
            c[a / b] += 1
            c[b / a] += 1
        elif mode == "difference":
            c[a - b] += 1
            c[b - a] += 1
        else:
            raise ValueError(mode)
    return c


def histogram(counter: Counter) -> dict[int, int]:
    return dict(sorted(Counter(counter.values()).items()))


# ---------------------------------------------------------------- constructions


def uvw_family(vbound: int, ubound: int, include_one: bool = True):
    """Values and unordered value-pair edges of the u*w/v construction, by quadruple loops."""
    us = [u for u in range(1, ubound + 1) if (u == 1 and include_one) or (u > 1 and trial_lpf(u) > vbound)]
    vws = [(v, w) for v in range(1, vbound + 1) for w in range(1, vbound + 1) if math.gcd(v, w) == 1]
    values = [Fraction(u * w, v) for u in us for v, w in vws]
    edges = set()
    for v, w in vws:
        for u in us:
            for z in us:
                a, b = Fraction(w * u, v), Fraction(v * z, w)
                if a != b:
                    edges.add(frozenset((a, b)))
    return values, edges


def projection(s: int):
    values = [sgn * (2 ** i - 2 ** j) for j in range(1, s + 1) for i in range(j + 1, s + 1) for sgn in (1, -1)]
    edges = set()
    for x in values:
        for y in values:
            # x = 2^i - 2^j > 0, y = -(2^k - 2^l) < 0, edge iff j = l
            if x > 0 > y and _low_bit(x) == _low_bit(-y):
                edges.add(frozenset((Fraction(x), Fraction(y))))
    return [Fraction(v) for v in values], edges


def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def matching(k: int):
    primes = sieve_primes(2 * k)
    ps, qs = primes[:k], primes[k:]
    pairs = [(Fraction(p, q), Fraction((q - 1) * p, q)) for p in ps for q in qs]
    values = [x for pair in pairs for x in pair]
    return values, {frozenset(pr) for pr in pairs}


def ruzsa(k: int):
    values = [sum(d * 10 ** i for i, d in enumerate(ds)) for ds in product((0, 1, 3), repeat=k)]
    vals = [Fraction(v) for v in values]
    edges = {frozenset((a, b)) for a in vals for b in vals if a != b}
    return vals, edges


def ruzsa_tail(k: int, delta) -> Fraction:
    """Fraction of the 9^k ordered digit-vector pairs with more than (1/3 + delta) k matches."""
    digits = np.array(list(product((0, 1, 3), repeat=k)), dtype=np.int8)
    thr = (Fraction(1, 3) + Fraction(delta)) * k
    hits = 0
    for row in digits:
        r = (digits == row).sum(axis=1)
        hits += int(sum(1 for x in r.tolist() if x > thr))
    return Fraction(hits, 9 ** k)


def blowup_edges(A, zeta, pairs=None):
    A = [Fraction(a) for a in A]
    pairs = pairs if pairs is not None else [(a, b) for a in A for b in A]
    edges = set()
    for a, b in pairs:
        for c in A:
            edges.add(frozenset((a + zeta * a * c, b - zeta * a * c)))
    return edges


def prune(edges, mode: str, top: int):
    """Keep edges whose value is among the ``top`` most popular; ties -> smaller value."""
    counts = edge_values(edges, mode)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    keep = {v for v, _ in ranked[:top]}
    out = set()
    for e in edges:
        a, b = tuple(e)
        vals = list(edge_values([(a, b)], mode))
        if all(v in keep for v in vals):
            out.add(e)
    return out


# ---------------------------------------------------------------- energy


def spectrum(values, mode: str) -> Counter:
    values = [Fraction(v) for v in values]
    if mode == "add":
        return Counter(a - b for a in values for b in values)
    return Counter(a / b for a in values for b in values)


def energy_quadruples(values, mode: str) -> int:
    values = [Fraction(v) for v in values]
    n = 0
    for a, b, c, d in product(values, repeat=4):
        if (mode == "add" and a + b == c + d) or (mode == "mul" and a * b == c * d):
            n += 1
    return n


def sumset(values):
    return {a + b for a in values for b in values}


def productset(values):
    return {a * b for a in values for b in values}


# ---------------------------------------------------------------- incidences


def incidences(points, lines, kind: str = "product") -> int:
    """All (point, line) pairs tested one by one."""
    total = 0
    for x, y in points:
        for a, b in lines:
            on = y == (x - a) * b if kind == "product" else y == (x - a) / b
            total += on
    return total


def incidences_all_pairs(points, lines, kind: str = "product") -> int:
    """Same count as ``incidences`` but vectorized over every (point, line) pair.

    Each test is cross-multiplied to integers: y = (x - a) b becomes
    yn xd ad bd = yd (xn ad - an xd) bn, and y = (x - a) / b becomes
    yn xd ad bn = yd (xn ad - an xd) bd.
    """
    def parts(vals):
        vals = [v if isinstance(v, Fraction) else Fraction(v) for v in vals]
        return [v.numerator for v in vals], [v.denominator for v in vals]

    arrs = [*parts([p[0] for p in points]), *parts([p[1] for p in points]),
            *parts([ln[0] for ln in lines]), *parts([ln[1] for ln in lines])]
    small = max(max(map(abs, a), default=0) for a in arrs) < (1 << 12)
    xn, xd, yn, yd, an, ad, bn, bd = (np.array(a, dtype=np.int64 if small else object) for a in arrs)
    total = 0
    step = max(1, (1 << 20) // max(len(lines), 1))
    for s in range(0, len(points), step):
        sl = slice(s, s + step)
        lhs_p, rhs_p = yn[sl, None] * xd[sl, None], yd[sl, None]
        diff = xn[sl, None] * ad[None, :] - an[None, :] * xd[sl, None]
        if kind == "product":
            hit = lhs_p * ad[None, :] * bd[None, :] == rhs_p * diff * bn[None, :]
        else:
            hit = lhs_p * ad[None, :] * bn[None, :] == rhs_p * diff * bd[None, :]
        total += int(np.count_nonzero(hit))
    return total


def pencil_line_counts(scene) -> list[dict[str, int]]:
    """For each point, how many listed lines of each family pass through it."""
    out = []
    for p in scene.points:
        out.append({fam: sum(scene.line_contains(fam, c, p) for c in consts)
                    for fam, consts in scene.families.items()})
    return out
