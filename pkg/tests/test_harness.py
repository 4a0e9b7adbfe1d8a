import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sumprodgraph import harness
from sumprodgraph.harness import emit_report, fit_exponent, fit_loglog, parse_report, run, sweep
from sumprodgraph.setgraph import Mode, sumset_size

SCHEMA = {"name", "params", "n_set", "m_edges", "stats", "bounds", "invariants", "seconds"}


def test_single_record_schema():
    _, _, rec = run("sumprod", n=4096)
    d = json.loads(emit_report(rec, "json"))
    assert SCHEMA <= set(d)
    assert set(d["stats"]) == {"sum", "product", "ratio", "difference"}
    assert set(d["bounds"]) == {"trivial", "thm41", "claim42", "bomb", "uncond"}
    assert d["seconds"] is None
    assert all(d["invariants"].values())
    assert d["n_set"] == 935 and d["m_edges"] == 39695


def test_csv_rows():
    recs = sweep("projection", [100, 400, 1600], modes=(Mode.SUM, Mode.PRODUCT))
    text = emit_report(recs, "csv")
    rows = text.strip().splitlines()
    assert len(rows) == 4
    assert rows[0] == "construction,n,n_set,m_edges,sums,products,ratios,differences,seconds"
    assert [r.n_set for r in recs] == [s * (s - 1) for s in (10, 20, 40)]


def test_round_trips():
    recs = sweep("matching", [3, 1, 2])
    assert [r.params["k"] for r in recs] == [1, 2, 3]
    assert parse_report(emit_report(recs, "json"), "json") == recs
    _, _, one = run("ruzsa", k=2)
    assert parse_report(emit_report(one, "json"), "json") == one
    back = parse_report(emit_report(recs, "csv"), "csv")
    for a, b in zip(recs, back):
        assert (a.name, a.params, a.n_set, a.m_edges, a.stats, a.seconds) == (
            b.name, b.params, b.n_set, b.m_edges, b.stats, b.seconds)


def test_ruzsa_sweep():
    recs = sweep("ruzsa", [2, 3, 4])
    assert all(r.passed for r in recs)
    from sumprodgraph.constructions import build_ruzsa_digits
    assert [sumset_size(build_ruzsa_digits(k).set) for k in (2, 3, 4)] == [36, 216, 1296]


def test_sweep_errors():
    with pytest.raises(ValueError):
        sweep("projection", [])
    with pytest.raises(ValueError):
        run("nonexistent", n=3)


def test_fit_exact_square():
    xs = [2, 3, 5, 7, 11]
    slope, intercept, res = fit_loglog(xs, [x * x for x in xs])
    assert abs(slope - 2.0) < 1e-9 and abs(intercept) < 1e-9


@settings(max_examples=50)
@given(st.floats(0.1, 5), st.floats(-3, 3), st.lists(st.integers(2, 10**6), min_size=3, max_size=8, unique=True))
def test_fit_recovers_exponent(c, e, xs):
    ys = [math.exp(c) * x ** e for x in xs]
    slope, _, _ = fit_loglog(xs, ys)
    assert abs(slope - e) < 1e-9


def test_fit_rejects_bad_input():
    with pytest.raises(ValueError):
        fit_loglog([1, 2], [1, 2])
    with pytest.raises(ValueError):
        fit_loglog([1, 2, 3], [0, 1, 2])


def test_projection_fit_small():
    recs = sweep("projection", [s * s for s in (20, 30, 40, 60)], modes=())
    fit = fit_exponent(recs, "n_set", "m_edges")
    assert 1.45 <= fit.slope <= 1.55 and fit.points == 4


def test_quantity_expressions():
    _, _, rec = run("sumprod", modes=(Mode.SUM, Mode.PRODUCT), n=4096)
    assert rec.quantity("sums+products") == 6875 + 3321
    assert rec.quantity("sum+product") == 6875 + 3321
    assert rec.quantity("m_edges") == 39695
    with pytest.raises(ValueError):
        rec.quantity("ratios")


def test_trivial_bound_recorded():
    for name, params in (("sumprod", {"n": 4096}), ("projection", {"n": 100}), ("matching", {"k": 4}),
                         ("case1", {"n": 256, "c": Fraction(3, 4)})):
        _, st_, rec = run(name, **params)
        total = rec.stats["sum"] + rec.stats["product"]
        assert rec.invariants["trivial_bound"] and total * total >= rec.m_edges


def test_determinism():
    a = emit_report(sweep("blowup", [3, 4], seed=11), "json")
    b = emit_report(sweep("blowup", [3, 4], seed=11), "json")
    assert a == b
    c = emit_report(run("case2", n=4096, c=Fraction(1, 3))[2], "json")
    assert c == emit_report(run("case2", n=4096, c=Fraction(1, 3))[2], "json")


def test_timings_opt_in():
    _, _, rec = run("matching", timings=True, k=3)
    assert isinstance(rec.seconds, float)


def test_verify_single_and_unknown():
    checks = harness.verify("matching")
    assert checks and all(checks.values())
    with pytest.raises(ValueError):
        harness.verify("nothing")
