"""Lower-bound formulas for sums + products (or ratios) along a graph.

Each bound has the shape m^a / n^b, or a min of two such terms. Numeric
values set o(1) exponent terms to 0 and big-O constants to 1 ("shape only,
constants suppressed"). Comparisons between bounds at integer (n, m) are
exact: both sides are raised to a common integer power.

The incidence part rebuilds the point/line configuration from the Elekes
argument and counts incidences exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactnum import as_rat
from .setgraph import DivisionHazard, EdgeGraph, Mode, ValueSet, edge_tally


@dataclass(frozen=True)
class PowerBound:
    """value(n, m) = m**m_exponent / n**n_exponent"""

    name: str
    m_exponent: Fraction
    n_exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m_exponent", as_rat(self.m_exponent))
        object.__setattr__(self, "n_exponent", as_rat(self.n_exponent))

    @property
    def terms(self) -> tuple["PowerBound", ...]:
        return (self,)

    def log_value(self, n, m) -> float:
        return float(self.m_exponent) * math.log(m) - float(self.n_exponent) * math.log(n)

    def value(self, n, m) -> float:
        return math.exp(self.log_value(n, m))

    def exact_power(self, n: int, m: int, power: int) -> Fraction:
        """value(n, m) ** power for a power that clears both exponent denominators."""
        a, b = self.m_exponent * power, self.n_exponent * power
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError("power does not clear the exponent denominators")
        return Fraction(m) ** int(a) / Fraction(n) ** int(b)


@dataclass(frozen=True)
class MinBound:
    name: str
    terms: tuple[PowerBound, ...]

    def log_value(self, n, m) -> float:
        return min(t.log_value(n, m) for t in self.terms)

    def value(self, n, m) -> float:
        return math.exp(self.log_value(n, m))


TRIVIAL = PowerBound("trivial", Fraction(1, 2), 0)
THM41 = PowerBound("thm41", Fraction(3, 2), Fraction(7, 4))
CLAIM42 = PowerBound("claim42", Fraction(18, 11), 2)
BOMB_FIRST = PowerBound("bomb_first", Fraction(8, 14), Fraction(1, 14))
BOMB_SECOND = PowerBound("bomb_second", 1, Fraction(1, 2))
BOMB = MinBound("bomb", (BOMB_FIRST, BOMB_SECOND))
UNCOND = PowerBound("uncond", Fraction(19, 9), Fraction(28, 9))

BOUNDS = {b.name: b for b in (TRIVIAL, THM41, CLAIM42, BOMB, UNCOND)}
NAMED = {b.name: b for b in (TRIVIAL, THM41, CLAIM42, BOMB_FIRST, BOMB_SECOND, UNCOND)}


def parse_bound(text: str) -> PowerBound:
    """A bound name (``thm41``) or explicit exponents ``"3/2,7/4"``."""
    if text in NAMED:
        return NAMED[text]
    try:
        a, b = text.split(",")
        return PowerBound(text, Fraction(a.strip()), Fraction(b.strip()))
    except ValueError:
        raise ValueError(f"unknown bound {text!r}; use one of {sorted(NAMED)} or 'a,b'") from None


def _common_power(*bounds: PowerBound) -> int:
    den = 1
    for b in bounds:
        den = math.lcm(den, b.m_exponent.denominator, b.n_exponent.denominator)
    return den


def _smallest_term(bound, n: int, m: int) -> PowerBound:
    best = bound.terms[0]
    for t in bound.terms[1:]:
        if compare(t, best, n, m) < 0:
            best = t
    return best


def compare(b1, b2, n: int, m: int) -> int:
    """Exact sign of b1(n, m) - b2(n, m) (-1, 0 or 1)."""
    t1, t2 = _smallest_term(b1, n, m), _smallest_term(b2, n, m)
    k = _common_power(t1, t2)
    x, y = t1.exact_power(n, m, k), t2.exact_power(n, m, k)
    return (x > y) - (x < y)


def evaluate_bounds(n: int, m: int) -> dict:
    """Every bound at (n, m); ``dominant`` names the largest one."""
    if n < 2 or not 1 <= m <= n * (n - 1) // 2:
        raise ValueError(f"need 1 <= m <= n(n-1)/2, got n={n}, m={m}")
    values = {name: b.value(n, m) for name, b in BOUNDS.items()}
    dominant = max(BOUNDS, key=lambda name: BOUNDS[name].log_value(n, m))
    return {"n": n, "m": m, "values": values, "dominant": dominant,
            "note": "shape only, constants suppressed"}


def crossover_exponent(b1: PowerBound, b2: PowerBound) -> Fraction:
    """The e with b1 = b2 at m = n^e."""
    if b1.m_exponent == b2.m_exponent:
        raise ValueError("equal m-exponents: no crossover")
    return (b1.n_exponent - b2.n_exponent) / (b1.m_exponent - b2.m_exponent)


# ---------------------------------------------------------------- incidences


@dataclass
class GridLineScene:
    """Points and lines y = (x - a) * b (product) or y = (x - a) / b (ratio).

    For scenes built from a graph the points form the grid ``xs`` x ``ys``.
    """

    xs: list[Fraction]
    ys: list[Fraction]
    lines: list[tuple[Fraction, Fraction]]
    kind: str = "product"
    explicit_points: list[tuple[Fraction, Fraction]] | None = None

    @property
    def points(self) -> list[tuple[Fraction, Fraction]]:
        if self.explicit_points is not None:
            return self.explicit_points
        return [(x, y) for x in self.xs for y in self.ys]

    @property
    def point_count(self) -> int:
        if self.explicit_points is not None:
            return len(self.explicit_points)
        return len(self.xs) * len(self.ys)

    def line_y(self, line, x) -> Fraction:
        a, b = line
        return (x - a) * b if self.kind == "product" else (x - a) / b

    @classmethod
    def from_points(cls, points, lines, kind="product") -> "GridLineScene":
        pts = sorted({(as_rat(x), as_rat(y)) for x, y in points})
        lns = sorted({(as_rat(a), as_rat(b)) for a, b in lines})
        return cls(sorted({p[0] for p in pts}), sorted({p[1] for p in pts}), lns, kind, explicit_points=pts)


def elekes_scene(vs: ValueSet, graph: EdgeGraph, kind: str = "product") -> GridLineScene:
    """Points (A +_G A) x (A *_G A) (or x (A /_G A)); lines for every (a, b) in A^2."""
    if kind not in ("product", "ratio"):
        raise ValueError(kind)
    if vs.has_zero:
        raise DivisionHazard("the line family needs 0 not in A")
    if graph.edge_count == 0:
        raise ValueError("graph has no edges: empty scene")
    xs = sorted(edge_tally(vs, graph, Mode.SUM).to_counter())
    ys = sorted(edge_tally(vs, graph, Mode.PRODUCT if kind == "product" else Mode.RATIO).to_counter())
    lines = [(a, b) for a in vs for b in vs]
    return GridLineScene(xs, ys, lines, kind)


def incidence_count(scene: GridLineScene) -> int:
    """Exact number of (point, line) incidences.

    A non-vertical line meets each vertical x = const at most once, so it is
    enough to test the point (x, line_y(x)) for every x-coordinate.
    """
    if not scene.lines or scene.point_count == 0:
        raise ValueError("empty scene")
    if scene.explicit_points is None:
        fast = _grid_count_numpy(scene)
        if fast is not None:
            return fast
        yset = set(scene.ys)
        return sum(scene.line_y(ln, x) in yset for ln in scene.lines for x in scene.xs)
    pset = set(scene.explicit_points)
    return sum((x, scene.line_y(ln, x)) in pset for ln in scene.lines for x in scene.xs)


def _parts(vals) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([v.numerator for v in vals], dtype=object),
            np.array([v.denominator for v in vals], dtype=object))


def _grid_count_numpy(scene: GridLineScene) -> int | None:
    """Vectorized grid count; None when the values are too large for int64 keys."""
    xn, xd = _parts(scene.xs)
    yn, yd = _parts(scene.ys)
    an, ad = _parts([ln[0] for ln in scene.lines])
    bn, bd = _parts([ln[1] for ln in scene.lines])
    top = lambda a: int(np.abs(a).max())
    # |y numerator| and y denominator before reduction
    dn = top(xn) * top(ad) + top(an) * top(xd)
    dd = top(xd) * top(ad)
    if scene.kind == "product":
        numb, denb = dn * top(bn), dd * top(bd)
    else:
        numb, denb = dn * top(bd), dd * top(bn)
    numb, denb = max(numb, top(yn)), max(denb, top(yd))
    if (2 * numb + 1) * (denb + 1) >= (1 << 62):
        return None
    xn, xd, yn, yd, an, ad, bn, bd = (a.astype(np.int64) for a in (xn, xd, yn, yd, an, ad, bn, bd))
    targets = np.sort((yn + numb) * (denb + 1) + yd)
    total = 0
    step = max(1, (1 << 20) // len(xn))
    for s in range(0, len(an), step):
        sl = slice(s, s + step)
        num = xn[None, :] * ad[sl, None] - an[sl, None] * xd[None, :]
        den = xd[None, :] * ad[sl, None]
        if scene.kind == "product":
            num, den = num * bn[sl, None], den * bd[sl, None]
        else:
            num, den = num * bd[sl, None], den * bn[sl, None]
            sign = np.sign(den)
            num, den = num * sign, den * sign
        g = np.gcd(num, den)
        keys = (num // g + numb) * (denb + 1) + den // g
        total += int(np.count_nonzero(np.isin(keys, targets)))
    return total


def degree_square_sum(graph: EdgeGraph) -> int:
    deg = graph.degrees()
    return int(np.dot(deg, deg))


def elekes_check(vs: ValueSet, graph: EdgeGraph, kind: str = "product") -> dict:
    """incidences >= sum deg^2 >= 4 m^2 / n, decided exactly."""
    scene = elekes_scene(vs, graph, kind)
    inc = incidence_count(scene)
    dsq = degree_square_sum(graph)
    n, m = len(vs), graph.edge_count
    return {
        "incidences": inc,
        "degree_square_sum": dsq,
        "lower": Fraction(4 * m * m, n),
        "incidences_ge_degree_squares": inc >= dsq,
        "degree_squares_ge_cauchy_schwarz": dsq * n >= 4 * m * m,
    }
