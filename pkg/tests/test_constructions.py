import math
from fractions import Fraction

import numpy as np
import pytest

from sumprodgraph import oracles
from sumprodgraph.constructions import (
    ConstructionError,
    admissible_u,
    build_blowup,
    build_blowup_restricted,
    build_case1,
    build_case2,
    build_matching,
    build_projection,
    build_ruzsa_digits,
    build_sumprod,
    compute_alpha_beta,
    coprime_pairs,
    geometric_set,
    large_small_quotients,
    ruzsa_match_counts,
    ruzsa_tail,
)
from sumprodgraph.energy import prune_by_popularity
from sumprodgraph.setgraph import EdgeGraph, Mode, ValueSet, edge_stats, edge_tally, sumset_size, differenceset_size


def pair_set(out):
    return {frozenset((out.set[i], out.set[j])) for i, j in out.graph.edges.tolist()}


def test_sumprod_4096_counts():
    out = build_sumprod(4096)
    assert out.meta["v_bound"] == 4 and out.meta["u_bound"] == 256
    U = admissible_u(256, 4)
    assert len(U) == 85 and U[0] == 1
    assert all(math.gcd(int(u), 6) == 1 for u in U)
    assert len(coprime_pairs(4)) == 11
    assert len(out.set) == 935 and out.graph.edge_count == 39695
    out.graph.validate()
    assert out.audit()


def test_sumprod_against_enumeration_oracle():
    out = build_sumprod(4096)
    vals, edges = oracles.uvw_family(4, 256)
    assert sorted(set(vals)) == list(out.set)
    assert pair_set(out) == edges


def test_sumprod_products_and_sums():
    out = build_sumprod(4096)
    prod = edge_stats(out.set, out.graph, Mode.PRODUCT)
    assert prod.all_integral and prod.max_abs_value <= 65536
    sums = edge_stats(out.set, out.graph, Mode.SUM)
    assert sums.max_denominator <= 16 and sums.max_abs_numerator <= 2 * 4096
    # (w^2 u + v^2 z) / (v w) is already reduced
    for i, j in out.graph.edges[:2000].tolist():
        (u, v, w), (z, v2, w2) = out.provenance[i], out.provenance[j]
        assert (v2, w2) == (w, v)
        num, den = w * w * u + v * v * z, v * w
        assert math.gcd(int(num), int(den)) == 1
        assert out.set[i] + out.set[j] == Fraction(int(num), int(den))


def test_sumprod_exclude_one():
    out = build_sumprod(4096, include_one=False)
    assert out.meta["u_count"] == 84 and len(out.set) == 84 * 11


def test_sumprod_rejects_tiny_n():
    with pytest.raises(ConstructionError):
        build_sumprod(63)


def test_case1_example():
    out = build_case1(256, Fraction(3, 4))
    assert out.meta["coprime_pairs"] == 3 and out.meta["u_count"] == 32
    assert len(out.set) == 96 and out.graph.edge_count == 1520
    prod = edge_stats(out.set, out.graph, Mode.PRODUCT)
    assert prod.all_integral and prod.max_abs_value <= 4096
    assert edge_stats(out.set, out.graph, Mode.SUM).distinct_count <= 2048
    _, edges = oracles.uvw_family(2, 64)
    assert pair_set(out) == edges


def test_case1_parameter_checks():
    with pytest.raises(ConstructionError):
        build_case1(256, Fraction(2, 3))
    with pytest.raises(ConstructionError):
        build_case1(16, Fraction(9, 10))


def test_case2_identity_at_two_thirds():
    base = build_sumprod(4096)
    out = build_case2(4096, Fraction(2, 3))
    assert out.meta["T"] >= edge_stats(base.set, base.graph, Mode.PRODUCT).distinct_count
    assert out.graph.edge_count == base.graph.edge_count


def test_case2_pruning():
    out = build_case2(4096, Fraction(1, 3))
    T = out.meta["T"]
    assert edge_stats(out.set, out.graph, Mode.PRODUCT).distinct_count <= T
    assert edge_stats(out.set, out.graph, Mode.SUM).distinct_count <= T
    base = pair_set(build_sumprod(4096))
    assert pair_set(out) <= base
    assert out.meta["edges_output"] == out.graph.edge_count > 0


def test_case2_threshold_is_exact_ceiling():
    out = build_case2(4096, Fraction(1, 3))
    # T = ceil(n^(c/2 - 1/3) m^(4/3)) with c = 1/3: n^(-1/6) = 1/4
    m = out.meta["m_vertices"]
    T = out.meta["T"]
    assert (4 * (T - 1)) ** 3 < m ** 4 <= (4 * T) ** 3


def test_prune_matches_oracle():
    out = build_case1(256, Fraction(3, 4))
    edges = pair_set(out)
    for mode, top in ((Mode.SUM, 40), (Mode.PRODUCT, 17), (Mode.RATIO, 30), (Mode.DIFFERENCE, 25)):
        g = prune_by_popularity(out.set, out.graph, mode, top)
        got = {frozenset((out.set[i], out.set[j])) for i, j in g.edges.tolist()}
        assert got == oracles.prune(edges, mode.value, top)


def test_projection_small():
    out = build_projection(9)
    assert list(out.set) == [-6, -4, -2, 2, 4, 6]
    assert out.graph.edge_count == 5
    assert set(edge_tally(out.set, out.graph, Mode.SUM).to_counter()) == {0, 4, -4}
    assert set(edge_tally(out.set, out.graph, Mode.RATIO).to_counter()) == {-1, -3, Fraction(-1, 3)}


@pytest.mark.parametrize("s", [3, 5, 8, 13])
def test_projection_formulas(s):
    out = build_projection(s * s)
    n = s * s
    assert len(out.set) == s * (s - 1)
    assert out.graph.edge_count == (s - 1) * s * (2 * s - 1) // 6
    sums = edge_stats(out.set, out.graph, Mode.SUM).distinct_count
    assert sums == (s - 1) * (s - 2) + 1 and sums <= n
    assert edge_stats(out.set, out.graph, Mode.RATIO).distinct_count <= n
    assert out.audit()


def test_matching_examples():
    out = build_matching(2)
    expected = {Fraction(2, 5), Fraction(8, 5), Fraction(2, 7), Fraction(12, 7),
                Fraction(3, 5), Fraction(12, 5), Fraction(3, 7), Fraction(18, 7)}
    assert set(out.set) == expected
    assert set(edge_tally(out.set, out.graph, Mode.SUM).to_counter()) == {2, 3}
    assert large_small_quotients(out.set, out.graph) == {4, 6}
    one = build_matching(1)
    assert list(one.set) == [Fraction(2, 3), Fraction(4, 3)]
    assert set(edge_tally(one.set, one.graph, Mode.SUM).to_counter()) == {2}
    assert large_small_quotients(one.set, one.graph) == {2}


def test_matching_ratio_mode():
    out = build_matching(4)
    # both orientations: q - 1 and 1 / (q - 1)
    assert edge_stats(out.set, out.graph, Mode.RATIO).distinct_count == 8
    assert (out.graph.degrees() == 1).all()


def test_ruzsa_examples():
    out = build_ruzsa_digits(2)
    assert list(out.set) == [0, 1, 3, 10, 11, 13, 30, 31, 33]
    assert sumset_size(out.set) == 36 and differenceset_size(out.set) == 49
    assert edge_tally(out.set, EdgeGraph(9, [(0, 1)]), Mode.SUM).distinct_count == 1
    from sumprodgraph.energy import spectrum
    assert spectrum(out.set, "add")[0] == 9


def test_ruzsa_edge_sums_miss_the_diagonal():
    # along the complete graph the doubled elements 2a are not all reached
    out = build_ruzsa_digits(2)
    assert edge_stats(out.set, out.graph, Mode.SUM).distinct_count == 6 ** 2 - 3 ** 2


def test_ruzsa_limits():
    with pytest.raises(ConstructionError):
        build_ruzsa_digits(10)
    with pytest.raises(ConstructionError):
        build_ruzsa_digits(0)


def test_ruzsa_tail_examples():
    assert ruzsa_tail(2, Fraction(1, 6)) == Fraction(1, 9)
    for k in (1, 4, 7):
        assert ruzsa_tail(k, Fraction(2, 3)) == 0
    closed = sum(math.comb(6, r) * 3 ** r * 6 ** (6 - r) for r in range(4, 7))
    assert ruzsa_tail(6, Fraction(1, 6)) == Fraction(closed, 9 ** 6)
    assert sum(ruzsa_match_counts(5).values()) == 9 ** 5


def test_blowup_examples():
    A = ValueSet([1, 2, 4])
    out = build_blowup(A, seed=0)
    assert len(out.set) == 30 and out.graph.edge_count == 27
    sums = set(edge_tally(out.set, out.graph, Mode.SUM).to_counter())
    assert sums == oracles.sumset(list(A)) and len(sums) == 6
    assert edge_stats(out.set, out.graph, Mode.RATIO).distinct_count <= 30
    small = build_blowup(ValueSet([1, 2]), seed=3)
    assert len(small.set) == 12 and small.graph.edge_count == 8
    assert pair_set(out) == oracles.blowup_edges(A, Fraction(out.meta["zeta"]))


def test_blowup_orientation():
    A = ValueSet([1, 2, 4])
    out = build_blowup(A, seed=5)
    zeta = Fraction(out.meta["zeta"])
    ratios = set(edge_tally(out.set, out.graph, Mode.RATIO).to_counter())
    for a in A:
        for b in A:
            for c in A:
                assert (a + zeta * a * c) / (b - zeta * a * c) in ratios


def test_blowup_seeded_and_deterministic():
    A = geometric_set(5)
    a, b = build_blowup(A, seed=7), build_blowup(A, seed=7)
    assert a.meta["zeta"] == b.meta["zeta"]
    assert a.graph.edges.tolist() == b.graph.edges.tolist()
    assert build_blowup(A, seed=8).meta["zeta"] != a.meta["zeta"]


def test_blowup_rejects_zero():
    with pytest.raises(ConstructionError):
        build_blowup(ValueSet([0, 1, 2]))


def test_blowup_restricted():
    A = ValueSet([1, 2, 4])
    out = build_blowup_restricted(A, seed=0)
    assert out.graph.edge_count == out.meta["H_ordered_pairs"] * len(A)
    sums = set(edge_tally(out.set, out.graph, Mode.SUM).to_counter())
    assert sums <= oracles.sumset(list(A))
    assert edge_stats(out.set, out.graph, Mode.RATIO).distinct_count <= 2 * out.meta["M"] * len(A)


def test_blowup_restricted_geometric_ratio_bound():
    A = geometric_set(30)
    out = build_blowup_restricted(A, seed=1)
    M = out.meta["M"]
    ratios = edge_stats(out.set, out.graph, Mode.RATIO).distinct_count
    # per orientation at most M |A| values
    assert ratios <= 2 * M * len(A)


def test_blowup_restricted_full_relation_is_blowup():
    # a set with one dominant ratio level: H covers all ordered pairs
    A = ValueSet([1, 2])
    full = build_blowup_restricted(A, seed=2)
    plain = build_blowup(A, seed=2)
    if full.meta["H_ordered_pairs"] == len(A) ** 2:
        assert full.graph.edges.tolist() == plain.graph.edges.tolist()
    else:
        assert full.graph.edge_count < plain.graph.edge_count


def test_alpha_beta():
    alpha, beta = compute_alpha_beta(geometric_set(30))
    assert beta == pytest.approx(2 - math.log(59) / math.log(30))
    assert beta == pytest.approx(0.801, abs=1e-3)
    n = 40
    alpha, _ = compute_alpha_beta(ValueSet(range(1, n + 1)))
    assert alpha == pytest.approx(2 - math.log(2 * n - 1) / math.log(n))
    # distinct powers of two: all pairwise sums differ, |A+A| = n(n+1)/2, alpha -> 0 like log 2 / log n
    alphas = []
    for k in (10, 40, 160):
        alpha, _ = compute_alpha_beta(geometric_set(k))
        assert alpha == pytest.approx(2 - math.log(k * (k + 1) / 2) / math.log(k))
        alphas.append(alpha)
    assert alphas == sorted(alphas, reverse=True) and alphas[-1] < 0.15


def test_generators_deterministic():
    for build in (lambda: build_sumprod(4096), lambda: build_projection(64), lambda: build_matching(5),
                  lambda: build_ruzsa_digits(3)):
        a, b = build(), build()
        assert a.set == b.set and np.array_equal(a.graph.edges, b.graph.edges)
