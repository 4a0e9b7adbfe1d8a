import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sumprodgraph import oracles
from sumprodgraph.bounds import (
    BOMB,
    BOMB_FIRST,
    BOUNDS,
    CLAIM42,
    THM41,
    TRIVIAL,
    UNCOND,
    GridLineScene,
    PowerBound,
    compare,
    crossover_exponent,
    degree_square_sum,
    elekes_check,
    elekes_scene,
    evaluate_bounds,
    incidence_count,
    parse_bound,
)
from sumprodgraph.setgraph import DivisionHazard, EdgeGraph, ValueSet


def test_crossovers():
    assert crossover_exponent(THM41, TRIVIAL) == Fraction(7, 4)
    assert crossover_exponent(THM41, BOMB_FIRST) == Fraction(47, 26)
    assert crossover_exponent(TRIVIAL, THM41) == Fraction(7, 4)
    with pytest.raises(ValueError):
        crossover_exponent(THM41, THM41)


@given(st.fractions(0, 4, max_denominator=20), st.fractions(0, 4, max_denominator=20),
       st.fractions(0, 4, max_denominator=20), st.fractions(0, 4, max_denominator=20))
def test_crossover_symmetric(a1, b1, a2, b2):
    if a1 == a2:
        return
    p, q = PowerBound("p", a1, b1), PowerBound("q", a2, b2)
    assert crossover_exponent(p, q) == crossover_exponent(q, p)
    assert isinstance(crossover_exponent(p, q), Fraction)


def test_m32_bound_equals_sqrt_m_at_crossover():
    n = 256
    m = 2 ** 14  # = n^(7/4)
    assert compare(THM41, TRIVIAL, n, m) == 0
    assert THM41.value(n, m) == pytest.approx(m ** 0.5)
    assert compare(THM41, TRIVIAL, n, m + 1) > 0
    assert compare(THM41, TRIVIAL, n, m - 1) < 0


def test_m32_bound_exact_power():
    n = 2 ** 20
    m = 2 ** 38  # = n^1.9
    assert THM41.exact_power(n, m, 4) == Fraction(m) ** 6 / Fraction(n) ** 7
    assert THM41.exact_power(n, m, 4) == Fraction(2) ** (38 * 6 - 20 * 7)


@settings(max_examples=200)
@given(st.integers(2, 10**6), st.data())
def test_m32_bound_dominates_uncond(n, data):
    m = data.draw(st.integers(1, n * n))
    assert compare(THM41, UNCOND, n, m) >= 0


@settings(max_examples=100)
@given(st.integers(3, 10**5), st.data())
def test_monotone_in_m(n, data):
    m = data.draw(st.integers(1, n * (n - 1) // 2 - 1))
    for b in (TRIVIAL, THM41, CLAIM42, UNCOND, *BOMB.terms):
        k = math.lcm(b.m_exponent.denominator, b.n_exponent.denominator)
        assert b.exact_power(n, m, k) < b.exact_power(n, m + 1, k)
    assert BOMB.log_value(n, m) < BOMB.log_value(n, m + 1)


def test_evaluate_bounds_report():
    rep = evaluate_bounds(2 ** 10, 2 ** 18)
    assert set(rep["values"]) == {"trivial", "thm41", "claim42", "bomb", "uncond"}
    assert rep["note"] == "shape only, constants suppressed"
    assert rep["dominant"] == max(rep["values"], key=rep["values"].get)
    assert compare(BOUNDS["bomb"], BOMB_FIRST, 2 ** 10, 2 ** 18) <= 0
    assert rep["values"]["bomb"] == pytest.approx(min(BOMB.terms[0].value(2 ** 10, 2 ** 18),
                                                      BOMB.terms[1].value(2 ** 10, 2 ** 18)))
    with pytest.raises(ValueError):
        evaluate_bounds(16, 2 ** 7)


def test_bounds_exponents():
    assert CLAIM42.m_exponent == Fraction(18, 11) and CLAIM42.n_exponent == 2
    assert UNCOND.m_exponent == Fraction(19, 9) and UNCOND.n_exponent == Fraction(28, 9)
    assert parse_bound("thm41") is THM41
    assert parse_bound("3/2, 7/4").m_exponent == Fraction(3, 2)
    with pytest.raises(ValueError):
        parse_bound("nope")


def test_scene_example(abc):
    g = EdgeGraph(3, [(0, 1), (1, 2)])
    sc = elekes_scene(abc, g)
    assert sc.xs == [3, 5] and sc.ys == [2, 6] and sc.point_count == 4
    assert len(sc.lines) == 9
    inc = incidence_count(sc)
    assert inc == oracles.incidences(sc.points, sc.lines)
    assert inc >= degree_square_sum(g) == 6


def test_scene_errors():
    with pytest.raises(ValueError):
        elekes_scene(ValueSet([1]), EdgeGraph(1, []))
    with pytest.raises(DivisionHazard):
        elekes_scene(ValueSet([0, 1]), EdgeGraph(2, [(0, 1)]))


def test_single_point_single_line():
    sc = GridLineScene.from_points([(3, 2)], [(1, 1)])
    assert incidence_count(sc) == 1


def test_explicit_points_scene_matches_oracle():
    rng = random.Random(1)
    pts = [(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5))) for _ in range(30)]
    lines = [(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(1, 3), rng.randint(1, 2))) for _ in range(20)]
    for kind in ("product", "ratio"):
        sc = GridLineScene.from_points(pts, lines, kind)
        assert incidence_count(sc) == oracles.incidences(sc.points, sc.lines, kind)


def test_elekes_random_rational_sets():
    rng = random.Random(7)
    for _ in range(20):
        vals = {Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(rng.randint(3, 9))} - {0}
        A = ValueSet(sorted(vals))
        n = len(A)
        if n < 2:
            continue
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.6] or [(0, 1)]
        g = EdgeGraph(n, pairs)
        for kind in ("product", "ratio"):
            rep = elekes_check(A, g, kind)
            assert rep["incidences_ge_degree_squares"] and rep["degree_squares_ge_cauchy_schwarz"]
            sc = elekes_scene(A, g, kind)
            assert rep["incidences"] == oracles.incidences(sc.points, sc.lines, kind)
