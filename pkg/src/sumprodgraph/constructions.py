"""Deterministic generators for the extremal (set, graph) pairs.

Every generator returns a :class:`ConstructionOutput`. Its ``provenance``
holds one witness per vertex, so each value can be rebuilt and audited with
:meth:`ConstructionOutput.reconstruct`.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

import numpy as np

from .energy import EnergyMode, dyadic_extract, prune_by_popularity
from .exactnum import (
    as_rat,
    ceil_power_product,
    first_primes,
    floor_power,
    next_prime,
    prime_table,
)
from .setgraph import (
    Bipartite,
    Clique,
    EdgeGraph,
    Mode,
    ValueSet,
    build_value_set,
    edge_stats,
    productset_size,
    sumset_size,
)


class ConstructionError(ValueError):
    pass


class ZetaSelectionError(ConstructionError):
    pass


@dataclass
class ConstructionOutput:
    name: str
    params: dict
    set: ValueSet
    graph: EdgeGraph
    provenance: np.ndarray
    rebuild: Callable[[tuple], Fraction] = field(repr=False)
    meta: dict = field(default_factory=dict)

    def reconstruct(self, i: int) -> Fraction:
        return self.rebuild(tuple(int(x) for x in self.provenance[i]))

    def audit(self) -> bool:
        """Every vertex value equals the value rebuilt from its witness."""
        return all(self.reconstruct(i) == v for i, v in enumerate(self.set))


# ---------------------------------------------------------------- u w / v family


def admissible_u(ubound: int, vbound: int, include_one: bool = True) -> np.ndarray:
    """u <= ubound with lpf(u) > vbound (u = 1 passes vacuously unless excluded)."""
    table = prime_table(max(ubound, 2))
    u = np.arange(2, ubound + 1)
    u = u[table.spf[2:ubound + 1] > vbound]
    if include_one:
        u = np.r_[1, u]
    return u.astype(np.int64)


def coprime_pairs(vbound: int) -> list[tuple[int, int]]:
    return [(v, w) for v in range(1, vbound + 1) for w in range(1, vbound + 1) if math.gcd(v, w) == 1]


def _uvw_construction(name: str, params: dict, vbound: int, ubound: int, include_one: bool) -> ConstructionOutput:
    U = admissible_u(ubound, vbound, include_one)
    pairs = coprime_pairs(vbound)
    us = U.tolist()
    raw = [Fraction(u * w, v) for v, w in pairs for u in us]
    vs = build_value_set(raw)
    if vs.collisions:
        raise ConstructionError(f"{vs.collisions} value collisions among u*w/v triples")
    pos = np.fromiter((vs.index[x] for x in raw), dtype=np.int64, count=len(raw)).reshape(len(pairs), len(us))
    row = {vw: r for r, vw in enumerate(pairs)}
    blocks = []
    for v, w in pairs:
        if v == w:  # only (1, 1); a = u, b = z, so u != z and each pair once
            blocks.append(Clique(pos[row[(v, w)]]))
        elif v < w:  # (w, v) gives the same edges with roles swapped
            blocks.append(Bipartite(pos[row[(v, w)]], pos[row[(w, v)]]))
    prov = np.empty((len(vs), 3), dtype=np.int64)
    for r, (v, w) in enumerate(pairs):
        prov[pos[r], 0] = U
        prov[pos[r], 1] = v
        prov[pos[r], 2] = w
    graph = EdgeGraph(len(vs), blocks=blocks)
    meta = {"v_bound": vbound, "u_bound": ubound, "u_count": len(us), "coprime_pairs": len(pairs)}
    return ConstructionOutput(name, params, vs, graph, prov, lambda t: Fraction(t[0] * t[2], t[1]), meta)


def build_sumprod(n: int, include_one: bool = True) -> ConstructionOutput:
    """Values u*w/v with v, w <= n^(1/6) coprime, u <= n^(2/3), lpf(u) > n^(1/6).

    u*w/v is joined to v*z/w for every admissible u, z. Products along edges
    are the integers u*z, and sums are (w^2 u + v^2 z) / (v w).
    """
    if n < 64:
        raise ConstructionError("sumprod needs n >= 64 so that floor(n^(1/6)) >= 2")
    vb, ub = floor_power(n, Fraction(1, 6)), floor_power(n, Fraction(2, 3))
    return _uvw_construction("sumprod", {"n": n}, vb, ub, include_one)


def build_case1(n: int, c, include_one: bool = True) -> ConstructionOutput:
    c = as_rat(c)
    if not Fraction(2, 3) < c < 1:
        raise ConstructionError("case1 needs 2/3 < c < 1")
    vb, ub = floor_power(n, (1 - c) / 2), floor_power(n, c)
    if vb < 2:
        raise ConstructionError(f"degenerate ranges: floor(n^((1-c)/2)) = {vb}")
    return _uvw_construction("case1", {"n": n, "c": str(c)}, vb, ub, include_one)


def build_case2(n: int, c, include_one: bool = True) -> ConstructionOutput:
    """Prune the sumprod graph to its T most popular products, then T most popular sums.

    T = ceil(p * m^(4/3)) with p = n^(c/2 - 1/3) and m = |A|.
    """
    c = as_rat(c)
    if not 0 < c <= Fraction(2, 3):
        raise ConstructionError("case2 needs 0 < c <= 2/3")
    base = build_sumprod(n, include_one)
    m = len(base.set)
    p_exp = c / 2 - Fraction(1, 3)
    top = ceil_power_product([(n, p_exp), (m, Fraction(4, 3))])
    if top == 0:
        raise ConstructionError("popularity threshold T = 0")
    g1 = prune_by_popularity(base.set, base.graph, Mode.PRODUCT, top)
    g2 = prune_by_popularity(base.set, g1, Mode.SUM, top)
    meta = dict(base.meta)
    meta.update({
        "T": top,
        "p": float(n) ** float(p_exp),
        "m_vertices": m,
        "edges_input": base.graph.edge_count,
        "edges_after_products": g1.edge_count,
        "edges_output": g2.edge_count,
    })
    return ConstructionOutput("case2", {"n": n, "c": str(c)}, base.set, g2, base.provenance, base.rebuild, meta)


# ---------------------------------------------------------------- projection


def build_projection(n: int) -> ConstructionOutput:
    """A = {+-(2^i - 2^j) : 1 <= j < i <= s}, s = floor(sqrt n).

    2^i - 2^j is joined to -(2^k - 2^j) for all i, k > j.
    """
    s = math.isqrt(n)
    if s < 2:
        raise ConstructionError("projection needs floor(sqrt(n)) >= 2")
    wit = [(sign, i, j) for j in range(1, s) for i in range(j + 1, s + 1) for sign in (1, -1)]
    rebuild = lambda t: Fraction(t[0] * (2 ** t[1] - 2 ** t[2]))
    raw = [rebuild(t) for t in wit]
    vs = build_value_set(raw)
    if vs.collisions:
        raise ConstructionError("projection values collide")
    pos = {t: vs.index[x] for t, x in zip(wit, raw)}
    blocks = []
    for j in range(1, s):
        plus = np.array([pos[(1, i, j)] for i in range(j + 1, s + 1)], dtype=np.int64)
        minus = np.array([pos[(-1, k, j)] for k in range(j + 1, s + 1)], dtype=np.int64)
        blocks.append(Bipartite(plus, minus))
    prov = np.empty((len(vs), 3), dtype=np.int64)
    for t, x in zip(wit, raw):
        prov[vs.index[x]] = t
    return ConstructionOutput("projection", {"n": n}, vs, EdgeGraph(len(vs), blocks=blocks), prov, rebuild, {"s": s})


# ---------------------------------------------------------------- matching


def build_matching(k: int) -> ConstructionOutput:
    """Pairs (p_i/q_j, (q_j - 1) p_i/q_j) with p = primes 1..k and q = primes k+1..2k."""
    if k < 1:
        raise ConstructionError("matching needs k >= 1")
    primes = first_primes(2 * k)
    ps, qs = primes[:k], primes[k:]

    def rebuild(t):
        kind, i, j = t
        small = Fraction(ps[i], qs[j])
        return small if kind == 0 else small * (qs[j] - 1)

    wit = [(kind, i, j) for i in range(k) for j in range(k) for kind in (0, 1)]
    raw = [rebuild(t) for t in wit]
    vs = build_value_set(raw)
    if len(vs) != 2 * k * k:
        raise ConstructionError("matching vertices are not pairwise distinct")
    edges = [(vs.index[rebuild((0, i, j))], vs.index[rebuild((1, i, j))]) for i in range(k) for j in range(k)]
    prov = np.empty((len(vs), 3), dtype=np.int64)
    for t, x in zip(wit, raw):
        prov[vs.index[x]] = t
    return ConstructionOutput("matching", {"k": k}, vs, EdgeGraph(len(vs), edges), prov, rebuild,
                              {"p": ps, "q": qs})


def large_small_quotients(vs: ValueSet, graph: EdgeGraph) -> set[Fraction]:
    """max/min of the endpoint values over all edges (positive sets)."""
    out = set()
    for i, j in graph.iter_chunks():
        for a, b in zip(i.tolist(), j.tolist()):
            x, y = vs[a], vs[b]
            out.add(max(x, y) / min(x, y))
    return out


# ---------------------------------------------------------------- digits

DIGITS = (0, 1, 3)
RUZSA_MAX_K = 9


def build_ruzsa_digits(k: int, allow_large: bool = False) -> ConstructionOutput:
    """sum a_i 10^i with a_i in {0, 1, 3} on the complete graph."""
    if k < 1 or (k > RUZSA_MAX_K and not allow_large):
        raise ConstructionError(f"ruzsa needs 1 <= k <= {RUZSA_MAX_K} (pass allow_large to override)")
    sums = {a + b for a in DIGITS for b in DIGITS}
    diffs = {a - b for a in DIGITS for b in DIGITS}
    # digitwise sums/differences must decode uniquely in base 10
    if len(sums) != 6 or len(diffs) != 7 or max(sums) >= 10 or max(abs(d) for d in diffs) >= 5:
        raise ConstructionError("digit set does not decode uniquely")
    digits = np.array(np.meshgrid(*[DIGITS] * k, indexing="ij")).reshape(k, -1).T
    powers = 10 ** np.arange(k, dtype=np.int64)
    raw = (digits * powers).sum(axis=1)
    vs = build_value_set(int(x) for x in raw)
    if vs.collisions:
        raise ConstructionError("digit values collide")
    order = np.argsort(raw)
    prov = digits[order]
    graph = EdgeGraph(len(vs), blocks=[Clique(np.arange(len(vs), dtype=np.int64))])
    rebuild = lambda t: Fraction(sum(d * 10 ** i for i, d in enumerate(t)))
    return ConstructionOutput("ruzsa", {"k": k}, vs, graph, prov, rebuild, {"digits": list(DIGITS), "base": 10})


def ruzsa_match_counts(k: int) -> dict[int, int]:
    """Ordered pairs of digit vectors with exactly r matching positions: C(k,r) 3^r 6^(k-r)."""
    return {r: comb(k, r) * 3 ** r * 6 ** (k - r) for r in range(k + 1)}


def ruzsa_tail(k: int, delta) -> Fraction:
    """Fraction of ordered pairs in A^2 with more than (1/3 + delta) k matching digits."""
    if k < 1:
        raise ValueError("k must be >= 1")
    thr = (Fraction(1, 3) + as_rat(delta)) * k
    hits = sum(c for r, c in ruzsa_match_counts(k).items() if r > thr)
    return Fraction(hits, 9 ** k)


# ---------------------------------------------------------------- blow-up


def compute_alpha_beta(vs: ValueSet) -> tuple[float, float]:
    """alpha = 2 - log|A+A|/log|A|, beta = 2 - log|AA|/log|A|."""
    n = len(vs)
    if n < 2:
        raise ValueError("need |A| >= 2")
    ln = math.log(n)
    return 2 - math.log(sumset_size(vs)) / ln, 2 - math.log(productset_size(vs)) / ln


ZETA_TRIES = 64


def _select_zeta(A: list[Fraction], D: list[Fraction], seed: int, tries: int = ZETA_TRIES):
    rng = random.Random(seed)
    last = None
    for attempt in range(1, tries + 1):
        zeta = Fraction(rng.randrange(1, 1 << 61), next_prime(rng.randrange(1 << 31, 1 << 32)))
        seen: dict[Fraction, tuple] = {}
        clash = None
        for ai, a in enumerate(A):
            for di, d in enumerate(D):
                for sign in (1, -1):
                    x = a + sign * zeta * d
                    if x in seen:
                        clash = (seen[x], (sign, ai, di), x)
                        break
                    seen[x] = (sign, ai, di)
                if clash:
                    break
            if clash:
                break
        if clash is None:
            return zeta, attempt
        last = clash
    raise ZetaSelectionError(f"no valid zeta in {tries} tries; last collision {last[0]} ~ {last[1]} at {last[2]}")


def _blowup_vertices(A: ValueSet, seed: int):
    if A.has_zero:
        raise ConstructionError("blow-up needs 0 not in A")
    if len(A) < 2:
        raise ConstructionError("blow-up needs |A| >= 2")
    Avals = list(A)
    D = sorted({a * b for a in Avals for b in Avals})
    zeta, attempts = _select_zeta(Avals, D, seed)
    wit = [(sign, ai, di) for ai in range(len(Avals)) for di in range(len(D)) for sign in (1, -1)]
    rebuild = lambda t: Avals[t[1]] + t[0] * zeta * D[t[2]]
    raw = [rebuild(t) for t in wit]
    vs = build_value_set(raw)
    pos = {t: vs.index[x] for t, x in zip(wit, raw)}
    prov = np.empty((len(vs), 3), dtype=np.int64)
    for t, x in zip(wit, raw):
        prov[vs.index[x]] = t
    dindex = {d: i for i, d in enumerate(D)}
    meta = {"zeta": str(zeta), "zeta_attempts": attempts, "seed": seed, "A_size": len(A), "AA_size": len(D)}
    return vs, pos, dindex, prov, rebuild, meta


def _triple_edges(A: ValueSet, pos, dindex, ab_pairs):
    edges = []
    Avals = list(A)
    for ai, bi in ab_pairs:
        a = Avals[ai]
        for c in Avals:
            di = dindex[a * c]
            edges.append((pos[(1, ai, di)], pos[(-1, bi, di)]))
    return edges


def build_blowup(A: ValueSet, seed: int = 0) -> ConstructionOutput:
    """B = {a +- zeta d : a in A, d in AA}; a + zeta*a*c is joined to b - zeta*a*c."""
    vs, pos, dindex, prov, rebuild, meta = _blowup_vertices(A, seed)
    n = len(A)
    edges = _triple_edges(A, pos, dindex, ((a, b) for a in range(n) for b in range(n)))
    graph = EdgeGraph(len(vs), edges)
    return ConstructionOutput("blowup", {"A": [str(a) for a in A], "seed": seed}, vs, graph, prov, rebuild, meta)


def build_blowup_restricted(A: ValueSet, seed: int = 0) -> ConstructionOutput:
    """Blow-up keeping only triples whose (a, b) is in the multiplicative dyadic relation."""
    vs, pos, dindex, prov, rebuild, meta = _blowup_vertices(A, seed)
    ext = dyadic_extract(A, EnergyMode.MULTIPLICATIVE)
    edges = _triple_edges(A, pos, dindex, ext.pairs.tolist())
    graph = EdgeGraph(len(vs), edges)
    alpha, beta = compute_alpha_beta(A)
    N = len(vs)
    M = ext.M
    meta.update({
        "M": M,
        "H_ordered_pairs": len(ext.pairs),
        "alpha": alpha,
        "beta": beta,
        "targets": restricted_targets(N, M, alpha, beta),
        "extraction": ext.summary(),
    })
    return ConstructionOutput("blowup_restricted", {"A": [str(a) for a in A], "seed": seed}, vs, graph, prov,
                              rebuild, meta)


def restricted_targets(N: int, M: int, alpha: float, beta: float) -> dict[str, float]:
    """Growth targets at measured N and M (polylog factors and constants suppressed)."""
    return {
        "M_lower": N ** (beta / (3 - beta)),
        "M_upper": N ** ((2 - beta) / (3 - beta)),
        "edges": M ** 0.5 * N ** ((4 + beta) / (6 - 2 * beta)),
        "edges_corollary": N ** ((2 + beta) / (3 - beta)),
        "ratios": M * N ** (1 / (3 - beta)),
        "sums": N ** ((2 - alpha) / (3 - beta)),
    }


def geometric_set(k: int, ratio: int = 2) -> ValueSet:
    return ValueSet([Fraction(ratio) ** i for i in range(k)])


# ---------------------------------------------------------------- registry

CONSTRUCTIONS = {
    "sumprod": build_sumprod,
    "case1": build_case1,
    "case2": build_case2,
    "projection": build_projection,
    "matching": build_matching,
    "ruzsa": build_ruzsa_digits,
    "blowup": build_blowup,
    "blowup_restricted": build_blowup_restricted,
}


def measure(out: ConstructionOutput, modes=tuple(Mode)) -> dict[Mode, object]:
    """edge_stats for each requested mode; ratio is skipped (None) when 0 is in the set."""
    stats = {}
    for mode in modes:
        mode = Mode(mode)
        if mode is Mode.RATIO and out.set.has_zero:
            stats[mode] = None
        else:
            stats[mode] = edge_stats(out.set, out.graph, mode)
    return stats

