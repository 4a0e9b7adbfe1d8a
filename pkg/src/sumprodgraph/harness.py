"""Runs, sweeps, exponent fits and reports.

A run builds one construction, measures the requested edge-value modes,
evaluates the lower-bound formulas at (|A|, |E|) and checks the
construction's exact invariants. All of it is stored in a ``SweepRecord``.
"""
from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import oracles
from .bounds import elekes_scene, evaluate_bounds, incidence_count
from .constructions import (
    CONSTRUCTIONS,
    ConstructionOutput,
    build_blowup,
    build_blowup_restricted,
    build_case1,
    build_case2,
    build_matching,
    build_projection,
    build_ruzsa_digits,
    build_sumprod,
    geometric_set,
    large_small_quotients,
    ruzsa_match_counts,
    ruzsa_tail,
)
from .energy import EnergyMode, dyadic_extract, energy, spectrum
from .exactnum import power_le
from .pencils import build_pencil_scene, verify_four_incidences
from .setgraph import (
    EdgeGraph,
    Mode,
    ValueSet,
    build_value_set,
    edge_tally,
    productset_size,
    ratioset_size,
    sumset_size,
)

# report key (mode value) -> CSV column / fit alias
CSV_FIELDS = {"sum": "sums", "product": "products", "ratio": "ratios", "difference": "differences"}
ALIASES = {v: k for k, v in CSV_FIELDS.items()}


@dataclass
class SweepRecord:
    name: str
    params: dict
    n_set: int
    m_edges: int
    stats: dict = field(default_factory=dict)
    bounds: dict | None = None
    invariants: dict = field(default_factory=dict)
    seconds: float | None = None
    meta: dict = field(default_factory=dict)

    def quantity(self, expr: str):
        """A field or a '+'-joined sum of fields, e.g. ``sums+products``."""
        total = 0
        for part in expr.split("+"):
            part = part.strip()
            part = ALIASES.get(part, part)
            if part in ("n_set", "m_edges"):
                total += getattr(self, part)
            elif part in self.stats:
                if self.stats[part] is None:
                    raise ValueError(f"{part} was not measured")
                total += self.stats[part]
            elif part in self.params:
                total += float(Fraction(self.params[part]))
            elif part in self.meta:
                total += self.meta[part]
            else:
                raise KeyError(part)
        return total

    @property
    def passed(self) -> bool:
        return all(self.invariants.values())

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SweepRecord":
        return cls(**d)


@dataclass
class FitResult:
    x: str
    y: str
    slope: float
    intercept: float
    residual: float
    points: int


# ---------------------------------------------------------------- invariants


def _uvw_invariants(out: ConstructionOutput, st: dict, prod_exp, sum_exp, den_exp) -> dict:
    n = out.params["n"]
    meta = out.meta
    U, P = meta["u_count"], meta["coprime_pairs"]
    inv = {
        "vertex_count": len(out.set) == P * U,
        "edge_count": out.graph.edge_count == (P * U * U - U) // 2,
        "witnesses": out.audit(),
    }
    prod, sums = st.get(Mode.PRODUCT), st.get(Mode.SUM)
    if prod is not None:
        inv["products_integral"] = prod.all_integral
        inv["products_le_bound"] = power_le(prod.max_abs_value, n, prod_exp)
    if sums is not None:
        inv["distinct_sums_le_bound"] = power_le(Fraction(sums.distinct_count, 2), n, sum_exp)
        inv["sum_denominators_le_bound"] = power_le(sums.max_denominator, n, den_exp)
        inv["sum_numerators_le_2n"] = sums.max_abs_numerator <= 2 * n
    return inv


def _edges_follow_uvw(out: ConstructionOutput) -> bool:
    """Every edge joins u*w/v to v*z/w (checked on the witnesses)."""
    e = out.graph.edges
    a, b = out.provenance[e[:, 0]], out.provenance[e[:, 1]]
    return bool(((a[:, 1] == b[:, 2]) & (a[:, 2] == b[:, 1])).all())


def construction_invariants(out: ConstructionOutput, st: dict) -> dict:
    name, p = out.name, out.params
    inv: dict = {}
    if name == "sumprod":
        inv = _uvw_invariants(out, st, Fraction(4, 3), Fraction(4, 3), Fraction(1, 3))
    elif name == "case1":
        c = Fraction(p["c"])
        inv = _uvw_invariants(out, st, 2 * c, 2 - c, 1 - c)
    elif name == "case2":
        T = out.meta["T"]
        inv["witnesses"] = out.audit()
        inv["edges_subset_of_input"] = _edges_follow_uvw(out) and out.meta["edges_output"] <= out.meta["edges_input"]
        if st.get(Mode.PRODUCT) is not None:
            inv["products_le_T"] = st[Mode.PRODUCT].distinct_count <= T
        if st.get(Mode.SUM) is not None:
            inv["sums_le_T"] = st[Mode.SUM].distinct_count <= T
    elif name == "projection":
        s, n = out.meta["s"], p["n"]
        inv["vertex_count"] = len(out.set) == s * (s - 1)
        inv["edge_count"] = out.graph.edge_count == (s - 1) * s * (2 * s - 1) // 6
        inv["witnesses"] = out.audit()
        if st.get(Mode.SUM) is not None:
            inv["distinct_sums_formula"] = st[Mode.SUM].distinct_count == (s - 1) * (s - 2) + 1
            inv["distinct_sums_le_n"] = st[Mode.SUM].distinct_count <= n
        if st.get(Mode.RATIO) is not None:
            inv["distinct_ratios_le_n"] = st[Mode.RATIO].distinct_count <= n
    elif name == "matching":
        k = p["k"]
        deg = out.graph.degrees()
        inv["vertex_count"] = len(out.set) == 2 * k * k
        inv["perfect_matching"] = bool((deg == 1).all())
        inv["witnesses"] = out.audit()
        if st.get(Mode.SUM) is not None:
            inv["distinct_sums_eq_k"] = st[Mode.SUM].distinct_count == k
        inv["large_small_quotients_eq_k"] = len(large_small_quotients(out.set, out.graph)) == k
    elif name == "ruzsa":
        k = p["k"]
        inv["vertex_count"] = len(out.set) == 3 ** k
        inv["edge_count"] = out.graph.edge_count == 3 ** k * (3 ** k - 1) // 2
        inv["sumset_6k"] = sumset_size(out.set) == 6 ** k
        spec = spectrum(out.set, EnergyMode.ADDITIVE)
        inv["differenceset_7k"] = len(spec.entries) == 7 ** k
        expected = {3 ** r: math.comb(k, r) * 6 ** (k - r) for r in range(k + 1)}
        got = {}
        for m in spec.entries.values():
            got[m] = got.get(m, 0) + 1
        inv["difference_histogram"] = got == expected
        inv["match_counts_sum_9k"] = sum(ruzsa_match_counts(k).values()) == 9 ** k
        inv["witnesses"] = out.audit()
    elif name in ("blowup", "blowup_restricted"):
        A = build_value_set(Fraction(a) for a in p["A"])
        nA = len(A)
        inv["vertex_count"] = len(out.set) == 2 * nA * productset_size(A)
        inv["witnesses"] = out.audit()
        sums = set(edge_tally(out.set, out.graph, Mode.SUM).to_counter())
        full = set(oracles.sumset(list(A)))
        if name == "blowup":
            inv["edge_count"] = out.graph.edge_count == nA ** 3
            inv["edge_sums_eq_sumset"] = sums == full
            if st.get(Mode.RATIO) is not None:
                inv["ratios_le_2_A_AoverA"] = st[Mode.RATIO].distinct_count <= 2 * nA * ratioset_size(A)
        else:
            M = out.meta["M"]
            inv["edge_count"] = out.graph.edge_count == out.meta["H_ordered_pairs"] * nA
            inv["edge_sums_in_sumset"] = sums <= full
            if st.get(Mode.RATIO) is not None:
                inv["ratios_le_2_M_A"] = st[Mode.RATIO].distinct_count <= 2 * M * nA
            inv.update({f"extraction_{k}": v for k, v in out.meta["extraction"]["invariants"].items()})
    s, pr = st.get(Mode.SUM), st.get(Mode.PRODUCT)
    if s is not None and pr is not None:
        total = s.distinct_count + pr.distinct_count
        inv["trivial_bound"] = total * total >= out.graph.edge_count
    return inv


# ---------------------------------------------------------------- runs


def build(name: str, **params) -> ConstructionOutput:
    if name not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {name!r}; choose from {sorted(CONSTRUCTIONS)}")
    if name in ("blowup", "blowup_restricted"):
        A = params.pop("A", None)
        if A is None:
            A = geometric_set(params.pop("k", 3))
        params.pop("k", None)
        return CONSTRUCTIONS[name](A, seed=params.get("seed", 0))
    params.pop("seed", None)
    return CONSTRUCTIONS[name](**params)


def run(name: str, modes=tuple(Mode), timings: bool = False, **params):
    """Build, measure and check one construction; returns (output, stats, record)."""
    t0 = time.perf_counter()
    out = build(name, **params)
    st = {}
    for mode in modes:
        mode = Mode(mode)
        st[mode] = None if (mode is Mode.RATIO and out.set.has_zero) else edge_tally(out.set, out.graph, mode).stats(mode)
    inv = construction_invariants(out, st)
    n, m = len(out.set), out.graph.edge_count
    bounds = evaluate_bounds(n, m)["values"] if n >= 2 and m >= 1 else None
    rec = SweepRecord(
        name=out.name,
        params=_jsonable(out.params),
        n_set=n,
        m_edges=m,
        stats={md.value: (None if st.get(md) is None else st[md].distinct_count) for md in Mode},
        bounds=bounds,
        invariants=inv,
        seconds=round(time.perf_counter() - t0, 3) if timings else None,
        meta=_jsonable(out.meta),
    )
    return out, st, rec


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def sweep(name: str, points, modes=tuple(Mode), timings: bool = False, param: str | None = None, **fixed):
    """One record per parameter point, ordered by the point value."""
    points = list(points)
    if not points:
        raise ValueError("sweep needs at least one parameter point")
    param = param or _primary_param(name)
    records = []
    for pt in sorted(points, key=lambda v: Fraction(v)):
        try:
            _, _, rec = run(name, modes=modes, timings=timings, **{param: pt}, **fixed)
        except Exception as exc:
            raise RuntimeError(f"{name} failed at {param}={pt}: {exc}") from exc
        records.append(rec)
    return records


def _primary_param(name: str) -> str:
    return {"matching": "k", "ruzsa": "k", "blowup": "k", "blowup_restricted": "k"}.get(name, "n")


def fit_loglog(xs, ys) -> tuple[float, float, float]:
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if len(xs) < 3:
        raise ValueError("need at least 3 points for a fit")
    if (xs <= 0).any() or (ys <= 0).any():
        raise ValueError("fit needs positive quantities")
    lx, ly = np.log(xs), np.log(ys)
    (slope, intercept), res, *_ = np.polyfit(lx, ly, 1, full=True)
    return float(slope), float(intercept), float(math.sqrt(res[0])) if len(res) else 0.0


def fit_exponent(records, x: str, y: str) -> FitResult:
    """Least-squares slope of log y against log x."""
    def get(r, q):
        return r.quantity(q) if isinstance(r, SweepRecord) else sum(r[p.strip()] for p in q.split("+"))
    xs = [get(r, x) for r in records]
    ys = [get(r, y) for r in records]
    slope, intercept, residual = fit_loglog(xs, ys)
    return FitResult(x, y, slope, intercept, residual, len(xs))


# ---------------------------------------------------------------- reports

CSV_TAIL = ["n_set", "m_edges", "sums", "products", "ratios", "differences", "seconds"]


def emit_report(records, fmt: str = "json") -> str:
    """Serialize one record or a list of records; output is byte-stable."""
    single = isinstance(records, SweepRecord)
    recs = [records] if single else list(records)
    if fmt == "json":
        payload = recs[0].to_dict() if single else [r.to_dict() for r in recs]
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        keys = sorted({k for r in recs for k in r.params if k not in ("A",)})
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["construction", *keys, *CSV_TAIL])
        for r in recs:
            w.writerow([r.name, *(r.params.get(k, "") for k in keys), r.n_set, r.m_edges,
                        *(_blank(r.stats.get(k)) for k in CSV_FIELDS),
                        _blank(r.seconds)])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def _blank(x):
    return "" if x is None else x


def parse_report(text: str, fmt: str = "json"):
    if fmt == "json":
        data = json.loads(text)
        if isinstance(data, dict):
            return SweepRecord.from_dict(data)
        return [SweepRecord.from_dict(d) for d in data]
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        out = []
        for row in rows:
            name = row.pop("construction")
            tail = {k: row.pop(k) for k in CSV_TAIL}
            params = {k: _num(v) for k, v in row.items() if v != ""}
            stats = {k: _num(tail[f]) for k, f in CSV_FIELDS.items()}
            out.append(SweepRecord(name, params, int(tail["n_set"]), int(tail["m_edges"]), stats,
                                   seconds=_num(tail["seconds"])))
        return out
    raise ValueError(f"unknown format {fmt!r}")


def _num(s: str):
    if s == "":
        return None
    try:
        return int(s)
    except ValueError:
        try:
            return float(s)
        except ValueError:
            return s


# ---------------------------------------------------------------- verification


def _same_graph(out: ConstructionOutput, edges: set) -> bool:
    got = {frozenset((out.set[i], out.set[j])) for i, j in out.graph.edges.tolist()}
    return got == edges and len(got) == out.graph.edge_count


def _same_stats(out: ConstructionOutput, edges: set, modes=tuple(Mode)) -> bool:
    ok = True
    pairs = [tuple(e) for e in edges]
    for mode in modes:
        if mode is Mode.RATIO and out.set.has_zero:
            continue
        brute = oracles.edge_values(pairs, mode.value)
        fast = edge_tally(out.set, out.graph, mode)
        ok &= fast.to_counter() == brute
        ok &= fast.stats(mode).histogram == oracles.histogram(brute)
    return ok


def verify(name: str, seed: int = 0) -> dict:
    """Brute-force oracle suite at small parameters, diffed against the main path."""
    checks: dict[str, bool] = {}
    names = sorted(VERIFY) if name == "all" else [name]
    for nm in names:
        if nm not in VERIFY:
            raise ValueError(f"nothing to verify for {nm!r}; choose from {sorted(VERIFY)} or 'all'")
        for key, ok in VERIFY[nm](seed).items():
            checks[f"{nm}.{key}"] = bool(ok)
    return checks


def _verify_sumprod(seed):
    out = build_sumprod(4096)
    vals, edges = oracles.uvw_family(out.meta["v_bound"], out.meta["u_bound"])
    return {
        "n4096_values": sorted(set(vals)) == list(out.set) and len(vals) == len(out.set),
        "n4096_graph": _same_graph(out, edges),
        "n4096_stats": _same_stats(out, edges),
    }


def _verify_case1(seed):
    out = build_case1(256, Fraction(3, 4))
    vals, edges = oracles.uvw_family(out.meta["v_bound"], out.meta["u_bound"])
    return {"n256_graph": _same_graph(out, edges), "n256_stats": _same_stats(out, edges)}


def _verify_case2(seed):
    out = build_case2(4096, Fraction(1, 3))
    _, edges = oracles.uvw_family(out.meta["v_bound"], out.meta["u_bound"])
    T = out.meta["T"]
    brute = oracles.prune(oracles.prune(edges, "product", T), "sum", T)
    return {"n4096_c1_3_graph": _same_graph(out, brute)}


def _verify_projection(seed):
    res = {}
    for s in range(2, 9):
        out = build_projection(s * s)
        vals, edges = oracles.projection(s)
        res[f"s{s}"] = sorted(vals) == list(out.set) and _same_graph(out, edges) and _same_stats(out, edges)
    return res


def _verify_matching(seed):
    res = {}
    for k in range(1, 6):
        out = build_matching(k)
        vals, edges = oracles.matching(k)
        res[f"k{k}"] = sorted(vals) == list(out.set) and _same_graph(out, edges) and _same_stats(out, edges)
    return res


def _verify_ruzsa(seed):
    res = {}
    for k in range(1, 5):
        out = build_ruzsa_digits(k)
        vals, edges = oracles.ruzsa(k)
        res[f"k{k}"] = sorted(vals) == list(out.set) and _same_graph(out, edges) and _same_stats(out, edges)
    for k in range(1, 6):
        for delta in (Fraction(1, 12), Fraction(1, 6), Fraction(1, 3)):
            res[f"tail_k{k}_d{delta}"] = ruzsa_tail(k, delta) == oracles.ruzsa_tail(k, delta)
    return res


def _verify_blowup(seed):
    A = ValueSet([1, 2, 4])
    out = build_blowup(A, seed)
    zeta = Fraction(out.meta["zeta"])
    full = build_blowup_restricted(A, seed)
    ext = dyadic_extract(A, EnergyMode.MULTIPLICATIVE)
    pairs = [(A[i], A[j]) for i, j in ext.pairs.tolist()]
    return {
        "blowup_graph": _same_graph(out, oracles.blowup_edges(A, zeta)),
        "blowup_stats": _same_stats(out, oracles.blowup_edges(A, zeta)),
        "blowup_restricted_graph": _same_graph(full, oracles.blowup_edges(A, zeta, pairs)),
    }


def _random_int_set(rng: random.Random, lo: int, hi: int, span: int = 4) -> ValueSet:
    size = rng.randint(lo, hi)
    return ValueSet(sorted(rng.sample(range(1, span * size + 1), size)))


def _verify_energy(seed):
    rng = random.Random(seed)
    res = {}
    for t in range(6):
        A = _random_int_set(rng, 2, 9)
        for mode in ("add", "mul"):
            brute_spec = oracles.spectrum(list(A), mode)
            res[f"set{t}_{mode}_spectrum"] = spectrum(A, mode).entries == dict(brute_spec)
            res[f"set{t}_{mode}_energy"] = energy(A, mode) == oracles.energy_quadruples(list(A), mode)
    return res


def _verify_bounds(seed):
    rng = random.Random(seed)
    res = {}
    for t in range(8):
        A = _random_int_set(rng, 3, 9)
        n = len(A)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5] or [(0, 1)]
        g = EdgeGraph(n, pairs)
        for kind in ("product", "ratio"):
            sc = elekes_scene(A, g, kind)
            res[f"scene{t}_{kind}"] = incidence_count(sc) == oracles.incidences(sc.points, sc.lines, kind)
    return res


def _verify_pencils(seed):
    res = {}
    for s in (3, 4, 6):
        sc = build_pencil_scene(s * s)
        counts = oracles.pencil_line_counts(sc)
        res[f"s{s}"] = all(all(v == 1 for v in c.values()) for c in counts) and verify_four_incidences(sc)["pass"]
    return res


VERIFY = {
    "sumprod": _verify_sumprod,
    "case1": _verify_case1,
    "case2": _verify_case2,
    "projection": _verify_projection,
    "matching": _verify_matching,
    "ruzsa": _verify_ruzsa,
    "blowup": _verify_blowup,
    "energy": _verify_energy,
    "bounds": _verify_bounds,
    "pencils": _verify_pencils,
}
