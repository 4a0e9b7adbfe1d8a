"""Value sets, graphs over them, and distinct-value statistics along edges.

The counting engine streams edges in chunks. When every intermediate fits in
62 bits, a chunk is evaluated with numpy: each reduced value ``num/den`` is
packed into one int64 key, and the chunk is reduced to ``(keys, counts)`` with
``np.unique``. Partial tallies are merged in a fixed order, so serial and
chunked runs agree exactly. Otherwise the engine uses Python integers.

Graphs either hold an explicit edge array or a list of edge blocks. A
``Bipartite`` block stands for every pair between two disjoint vertex lists.
A ``Clique`` block stands for every pair inside one list. The structured
constructions have up to ~5e8 edges, which only fit in memory as blocks.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Iterator

import numpy as np

from .exactnum import as_rat

CHUNK = 1 << 22
_SAFE = 1 << 62


class DivisionHazard(ValueError):
    """Ratio requested on a set containing 0."""


class Mode(str, Enum):
    SUM = "sum"
    PRODUCT = "product"
    RATIO = "ratio"
    DIFFERENCE = "difference"

    @property
    def oriented(self) -> bool:
        return self in (Mode.RATIO, Mode.DIFFERENCE)


# ---------------------------------------------------------------- value sets


class ValueSet:
    """Distinct rationals in increasing order, with a value -> position index."""

    def __init__(self, values: Iterable, collisions: int = 0):
        vals = [as_rat(v) for v in values]
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("ValueSet values must be strictly increasing")
        self.values: list[Fraction] = vals
        self.index = {v: i for i, v in enumerate(vals)}
        self.collisions = collisions

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __contains__(self, v):
        return as_rat(v) in self.index

    def __eq__(self, other):
        return isinstance(other, ValueSet) and self.values == other.values

    def __repr__(self):
        head = ", ".join(str(v) for v in self.values[:6])
        return f"ValueSet(n={len(self)}, [{head}{', ...' if len(self) > 6 else ''}])"

    def position(self, v) -> int:
        return self.index[as_rat(v)]

    @cached_property
    def max_abs_numerator(self) -> int:
        return max((abs(v.numerator) for v in self.values), default=0)

    @cached_property
    def max_denominator(self) -> int:
        return max((v.denominator for v in self.values), default=1)

    @cached_property
    def num(self) -> np.ndarray:
        return _int_array([v.numerator for v in self.values])

    @cached_property
    def den(self) -> np.ndarray:
        return _int_array([v.denominator for v in self.values])

    @property
    def has_zero(self) -> bool:
        return Fraction(0) in self.index


def _int_array(xs) -> np.ndarray:
    if all(-_SAFE < x < _SAFE for x in xs):
        return np.array(xs, dtype=np.int64)
    return np.array(xs, dtype=object)


def build_value_set(raw: Iterable) -> ValueSet:
    """Deduplicate and sort; ``collisions`` counts inputs that repeated a value."""
    raw = [as_rat(v) for v in raw]
    if not raw:
        raise ValueError("cannot build a ValueSet from an empty list")
    distinct = sorted(set(raw))
    return ValueSet(distinct, collisions=len(raw) - len(distinct))


def lcm_of_denominators(vs: ValueSet) -> int:
    return reduce(math.lcm, (v.denominator for v in vs), 1)


def scale_set(vs: ValueSet, factor) -> ValueSet:
    """Multiply every value by ``factor``.

    For a negative factor the canonical order reverses, so position i of the
    input becomes position n-1-i of the output (see ``scale_with_graph``).
    """
    factor = as_rat(factor)
    if factor == 0:
        raise ValueError("scale factor must be nonzero")
    scaled = [v * factor for v in vs]
    if factor < 0:
        scaled.reverse()
    return ValueSet(scaled, collisions=0)


def scale_with_graph(vs: ValueSet, graph: "EdgeGraph", factor):
    scaled = scale_set(vs, factor)
    if as_rat(factor) > 0:
        return scaled, graph
    n = len(vs)
    return scaled, graph.relabel(np.arange(n - 1, -1, -1, dtype=np.int64))


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class Bipartite:
    """All pairs (l, r) with l in ``left`` and r in ``right``."""

    left: np.ndarray
    right: np.ndarray

    @property
    def size(self) -> int:
        return len(self.left) * len(self.right)

    def chunks(self, max_pairs: int):
        nl, nr = len(self.left), len(self.right)
        if nl == 0 or nr == 0:
            return
        rows = max(1, max_pairs // nr)
        for s in range(0, nl, rows):
            part = self.left[s:s + rows]
            yield np.repeat(part, nr), np.tile(self.right, len(part))


@dataclass(frozen=True)
class Clique:
    """All pairs (v[a], v[b]) with a < b."""

    vertices: np.ndarray

    @property
    def size(self) -> int:
        k = len(self.vertices)
        return k * (k - 1) // 2

    def chunks(self, max_pairs: int):
        k = len(self.vertices)
        rows = max(1, max_pairs // max(k, 1))
        cols = np.arange(k)
        for s in range(0, k - 1, rows):
            r = np.arange(s, min(s + rows, k - 1))
            rr, cc = np.nonzero(cols[None, :] > r[:, None])
            yield self.vertices[r[rr]], self.vertices[cc]


class EdgeGraph:
    """Simple undirected graph on ``range(vertex_count)``.

    Edges are given either as an explicit ``(m, 2)`` array or as disjoint
    ``Bipartite``/``Clique`` blocks. ``ordered_pairs`` optionally keeps the
    ordered relation an undirected graph was derived from. The relation may
    include diagonal pairs (a, a).
    """

    def __init__(self, vertex_count: int, edges=None, *, blocks=(), ordered_pairs=None):
        self.vertex_count = int(vertex_count)
        self.blocks = list(blocks)
        if edges is not None and self.blocks:
            raise ValueError("give explicit edges or blocks, not both")
        if edges is not None or not self.blocks:
            e = np.asarray(edges if edges is not None else np.empty((0, 2)), dtype=np.int64).reshape(-1, 2)
            e = np.sort(e, axis=1)
            if len(e):
                if (e[:, 0] == e[:, 1]).any():
                    raise ValueError("loops are not allowed")
                if e.min() < 0 or e.max() >= self.vertex_count:
                    raise ValueError("edge index out of range")
                keys = e[:, 0] * self.vertex_count + e[:, 1]
                order = np.argsort(keys, kind="stable")
                e = e[order]
                if (np.diff(keys[order]) == 0).any():
                    raise ValueError("duplicate edges are not allowed")
            self._explicit = e
        else:
            self._explicit = None
        self.ordered_pairs = None if ordered_pairs is None else np.asarray(ordered_pairs, dtype=np.int64).reshape(-1, 2)

    @classmethod
    def from_pairs(cls, vertex_count: int, pairs) -> "EdgeGraph":
        """Normalize arbitrary pairs: drop loops and merge duplicates."""
        p = np.sort(np.asarray(pairs, dtype=np.int64).reshape(-1, 2), axis=1)
        p = p[p[:, 0] != p[:, 1]]
        keys = np.unique(p[:, 0] * vertex_count + p[:, 1])
        lo, hi = np.divmod(keys, vertex_count) if vertex_count else (keys, keys)
        return cls(vertex_count, np.stack([lo, hi], axis=1))

    @classmethod
    def from_ordered_pairs(cls, vertex_count: int, pairs) -> "EdgeGraph":
        g = cls.from_pairs(vertex_count, pairs)
        g.ordered_pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        return g

    @property
    def structured(self) -> bool:
        return self._explicit is None

    @property
    def edge_count(self) -> int:
        if self._explicit is not None:
            return len(self._explicit)
        return sum(b.size for b in self.blocks)

    def __len__(self):
        return self.edge_count

    def iter_chunks(self, max_pairs: int = CHUNK) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield ``(i, j)`` endpoint arrays covering every edge exactly once."""
        if self._explicit is not None:
            e = self._explicit
            for s in range(0, len(e), max_pairs):
                yield e[s:s + max_pairs, 0], e[s:s + max_pairs, 1]
            return
        for block in self.blocks:
            yield from block.chunks(max_pairs)

    @cached_property
    def edges(self) -> np.ndarray:
        """Sorted ``(m, 2)`` array with i < j (materializes block graphs)."""
        if self._explicit is not None:
            return self._explicit
        parts = [np.sort(np.stack([i, j], axis=1), axis=1) for i, j in self.iter_chunks()]
        e = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
        return e[np.lexsort((e[:, 1], e[:, 0]))]

    def validate(self) -> None:
        """Raise if the graph has loops, duplicate edges or bad indices."""
        e = self.edges
        if len(e) == 0:
            return
        if (e[:, 0] == e[:, 1]).any():
            raise ValueError("graph has loops")
        if e.min() < 0 or e.max() >= self.vertex_count:
            raise ValueError("edge index out of range")
        if (np.diff(e, axis=0) == 0).all(axis=1).any():
            raise ValueError("graph has duplicate edges")
        if self.ordered_pairs is not None:
            closure = EdgeGraph.from_pairs(self.vertex_count, self.ordered_pairs).edges
            if not np.array_equal(closure, e):
                raise ValueError("ordered_pairs do not project onto edges")

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.vertex_count, dtype=np.int64)
        for i, j in self.iter_chunks():
            deg += np.bincount(i, minlength=self.vertex_count)
            deg += np.bincount(j, minlength=self.vertex_count)
        return deg

    def relabel(self, perm: np.ndarray) -> "EdgeGraph":
        """Vertex v becomes perm[v]."""
        perm = np.asarray(perm, dtype=np.int64)
        ordered = None if self.ordered_pairs is None else perm[self.ordered_pairs]
        if self._explicit is not None:
            return EdgeGraph(self.vertex_count, perm[self._explicit], ordered_pairs=ordered)
        blocks = [Bipartite(perm[b.left], perm[b.right]) if isinstance(b, Bipartite) else Clique(perm[b.vertices])
                  for b in self.blocks]
        return EdgeGraph(self.vertex_count, blocks=blocks, ordered_pairs=ordered)

    def __repr__(self):
        kind = f"{len(self.blocks)} blocks" if self.structured else "explicit"
        return f"EdgeGraph(n={self.vertex_count}, m={self.edge_count}, {kind})"


# ---------------------------------------------------------------- serialization


def write_value_set(vs: ValueSet, path) -> None:
    with open(path, "w") as fh:
        for v in vs:
            fh.write(f"{v.numerator}/{v.denominator}\n")


def read_value_set(path) -> ValueSet:
    with open(path) as fh:
        return build_value_set(Fraction(line.strip()) for line in fh if line.strip())


def write_graph(graph: EdgeGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{graph.vertex_count} {graph.edge_count}\n")
        for i, j in graph.iter_chunks():
            lo, hi = np.minimum(i, j), np.maximum(i, j)
            order = np.lexsort((hi, lo))
            fh.write("".join(f"{a} {b}\n" for a, b in zip(lo[order].tolist(), hi[order].tolist())))


def read_graph(path) -> EdgeGraph:
    with open(path) as fh:
        n, m = (int(x) for x in fh.readline().split())
        pairs = [tuple(int(x) for x in line.split()) for line in fh if line.strip()]
    if len(pairs) != m:
        raise ValueError(f"header says {m} edges, file has {len(pairs)}")
    return EdgeGraph(n, pairs)


# ---------------------------------------------------------------- pair values

_OPS = {"add", "sub", "mul", "div"}


def _bounds(vs: ValueSet, op: str) -> tuple[int, int]:
    """Upper bounds on |numerator| and denominator of ``a op b`` (before reduction)."""
    p, q = vs.max_abs_numerator, vs.max_denominator
    if op in ("add", "sub"):
        return 2 * p * q, q * q
    if op == "mul":
        return p * p, q * q
    return p * q, p * q


@dataclass(frozen=True)
class Codec:
    """Packs a reduced ``num/den`` with |num| <= numb, den <= denb into one int64."""

    numb: int
    denb: int

    @staticmethod
    def for_op(vs: ValueSet, op: str) -> "Codec | None":
        if vs.num.dtype == object:
            return None
        numb, denb = _bounds(vs, op)
        if numb >= _SAFE or denb >= _SAFE or (2 * numb + 1) * (denb + 1) >= _SAFE:
            return None
        return Codec(numb, denb)

    def encode(self, num: np.ndarray, den: np.ndarray) -> np.ndarray:
        return (num + self.numb) * (self.denb + 1) + den

    def decode(self, keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        q, r = np.divmod(keys, self.denb + 1)
        return q - self.numb, r


def _reduce(num, den):
    g = np.gcd(num, den)
    return num // g, den // g


def pair_values(vs: ValueSet, i: np.ndarray, j: np.ndarray, op: str):
    """Reduced ``(num, den)`` arrays of ``vs[i] op vs[j]`` (int64 path)."""
    p, q = vs.num, vs.den
    if vs.max_denominator == 1 and op != "div":
        # integers: nothing to reduce
        a, b = p[i], p[j]
        num = a + b if op == "add" else a - b if op == "sub" else a * b
        return num, np.ones_like(num)
    pi, qi, pj, qj = p[i], q[i], p[j], q[j]
    if op == "add":
        return _reduce(pi * qj + pj * qi, qi * qj)
    if op == "sub":
        return _reduce(pi * qj - pj * qi, qi * qj)
    if op == "mul":
        return _reduce(pi * pj, qi * qj)
    if op == "div":
        num, den = pi * qj, qi * pj
        sign = np.sign(den)
        return _reduce(num * sign, den * sign)
    raise ValueError(op)


def _py_pair_values(vals: list[tuple[int, int]], i, j, op):
    gcd = math.gcd
    for a, b in zip(i.tolist(), j.tolist()):
        pa, qa = vals[a]
        pb, qb = vals[b]
        if op == "add":
            n, d = pa * qb + pb * qa, qa * qb
        elif op == "sub":
            n, d = pa * qb - pb * qa, qa * qb
        elif op == "mul":
            n, d = pa * pb, qa * qb
        else:
            n, d = pa * qb, qa * pb
            if d < 0:
                n, d = -n, -d
        g = gcd(n, d)
        yield n // g, d // g


# ---------------------------------------------------------------- tallies


def _count_keys(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sorted distinct keys and their counts; dense key ranges skip the sort."""
    if len(keys) == 0:
        return keys, keys
    lo, hi = int(keys.min()), int(keys.max())
    if hi - lo < 8 * len(keys):
        counts = np.bincount(keys - lo)
        present = np.flatnonzero(counts)
        return present + lo, counts[present]
    return np.unique(keys, return_counts=True)


class ValueTally:
    """Multiset of edge values: value -> number of (edge, orientation) events.

    Backed by sorted int64 keys and counts when a ``Codec`` applies, else by a
    dict keyed by ``(num, den)``. Pending chunk results are merged once they
    outgrow the merged part, so total merge work is O(N log N).
    """

    def __init__(self, codec: Codec | None):
        self.codec = codec
        self.events = 0
        if codec is None:
            self._dict: Counter = Counter()
        else:
            self._keys = np.empty(0, dtype=np.int64)
            self._counts = np.empty(0, dtype=np.int64)
            self._pending: list[tuple[np.ndarray, np.ndarray]] = []
            self._pending_size = 0

    # -- accumulation
    def add_arrays(self, num: np.ndarray, den: np.ndarray) -> None:
        self.events += len(num)
        if self.codec is None:
            self._dict.update(zip(num.tolist(), den.tolist()))
            return
        self._push(*_count_keys(self.codec.encode(num, den)))

    def add_pairs(self, pairs: Iterable[tuple[int, int]]) -> None:
        pairs = list(pairs)
        self._dict.update(pairs)
        self.events += len(pairs)

    def _push(self, keys, counts):
        self._pending.append((keys, counts))
        self._pending_size += len(keys)
        if self._pending_size >= max(len(self._keys), 1 << 20):
            self._flush()

    def _flush(self):
        if not self._pending:
            return
        keys = np.concatenate([self._keys] + [k for k, _ in self._pending])
        counts = np.concatenate([self._counts] + [c for _, c in self._pending])
        self._pending, self._pending_size = [], 0
        if len(keys) == 0:
            return
        order = np.argsort(keys, kind="stable")
        keys, counts = keys[order], counts[order]
        starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
        self._keys = keys[starts]
        self._counts = np.add.reduceat(counts, starts)

    def merge(self, other: "ValueTally") -> "ValueTally":
        """Combine two tallies; the result is independent of merge order."""
        if self.codec is not None and self.codec == other.codec:
            out = ValueTally(self.codec)
            self._flush()
            other._flush()
            out._pending = [(self._keys, self._counts), (other._keys, other._counts)]
            out._flush()
            out.events = self.events + other.events
            return out
        out = ValueTally(None)
        out._dict = Counter(self.as_pairs())
        out._dict.update(other.as_pairs())
        out.events = self.events + other.events
        return out

    # -- views
    def arrays(self):
        """``(num, den, counts)`` for the numpy backend."""
        self._flush()
        num, den = self.codec.decode(self._keys)
        return num, den, self._counts

    def as_pairs(self) -> dict[tuple[int, int], int]:
        if self.codec is None:
            return dict(self._dict)
        num, den, counts = self.arrays()
        return dict(zip(zip(num.tolist(), den.tolist()), counts.tolist()))

    def to_counter(self) -> Counter:
        return Counter({Fraction(n, d): c for (n, d), c in self.as_pairs().items()})

    @property
    def distinct_count(self) -> int:
        if self.codec is None:
            return len(self._dict)
        self._flush()
        return len(self._keys)

    def ranked_values(self) -> list[tuple[Fraction, int]]:
        """Values ordered by count (descending), ties by value (ascending)."""
        items = self.to_counter().items()
        return sorted(items, key=lambda kv: (-kv[1], kv[0]))

    def popular(self, top: int) -> set[Fraction]:
        """The ``top`` most frequent values; ties at the cutoff go to smaller values."""
        if top <= 0:
            return set()
        if self.codec is None or self.distinct_count <= top:
            return {v for v, _ in self.ranked_values()[:top]}
        num, den, counts = self.arrays()
        cutoff = np.sort(counts)[::-1][top - 1]
        above = counts > cutoff
        chosen = [Fraction(int(a), int(b)) for a, b in zip(num[above], den[above])]
        tied = sorted(Fraction(int(a), int(b)) for a, b in zip(num[counts == cutoff], den[counts == cutoff]))
        return set(chosen) | set(tied[:top - len(chosen)])

    def stats(self, mode: Mode) -> "EdgeValueStats":
        if self.codec is None:
            items = self.as_pairs()
            counts = list(items.values())
            if not items:
                return EdgeValueStats.empty(mode)
            top = max(items, key=lambda nd: Fraction(abs(nd[0]), nd[1]))
            return EdgeValueStats(
                mode=mode,
                distinct_count=len(items),
                histogram=dict(sorted(Counter(counts).items())),
                events=self.events,
                max_abs_value=Fraction(abs(top[0]), top[1]),
                max_denominator=max(d for _, d in items),
                max_abs_numerator=max(abs(n) for n, _ in items),
            )
        num, den, counts = self.arrays()
        if len(num) == 0:
            return EdgeValueStats.empty(mode)
        mult, freq = np.unique(counts, return_counts=True)
        approx = np.abs(num) / den
        cand = np.flatnonzero(approx >= approx.max() * (1 - 1e-9))
        top = max(Fraction(abs(int(num[c])), int(den[c])) for c in cand)
        return EdgeValueStats(
            mode=mode,
            distinct_count=len(num),
            histogram={int(a): int(b) for a, b in zip(mult, freq)},
            events=self.events,
            max_abs_value=top,
            max_denominator=int(den.max()),
            max_abs_numerator=int(np.abs(num).max()),
        )


@dataclass
class EdgeValueStats:
    """Distinct count and multiplicity histogram of one edge-value mode."""

    mode: Mode
    distinct_count: int
    histogram: dict[int, int] = field(default_factory=dict)
    events: int = 0
    max_abs_value: Fraction | None = None
    max_denominator: int = 1
    max_abs_numerator: int = 0

    @classmethod
    def empty(cls, mode: Mode) -> "EdgeValueStats":
        return cls(mode=mode, distinct_count=0)

    @property
    def all_integral(self) -> bool:
        return self.max_denominator == 1

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "distinct": self.distinct_count,
            "events": self.events,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "max_abs_value": None if self.max_abs_value is None else str(self.max_abs_value),
            "max_denominator": self.max_denominator,
            "max_abs_numerator": self.max_abs_numerator,
        }


_MODE_OP = {Mode.SUM: "add", Mode.PRODUCT: "mul", Mode.RATIO: "div", Mode.DIFFERENCE: "sub"}


def tally_pairs(vs: ValueSet, chunks: Iterable[tuple[np.ndarray, np.ndarray]], op: str,
                both_orientations: bool = False) -> ValueTally:
    """Tally ``vs[i] op vs[j]`` over index chunks (and ``vs[j] op vs[i]`` if asked)."""
    if op not in _OPS:
        raise ValueError(op)
    if op == "div" and vs.has_zero:
        raise DivisionHazard("ratio along edges needs 0 not in the set")
    codec = Codec.for_op(vs, op)
    tally = ValueTally(codec)
    if codec is None:
        vals = [(v.numerator, v.denominator) for v in vs]
        for i, j in chunks:
            tally.add_pairs(_py_pair_values(vals, i, j, op))
            if both_orientations:
                tally.add_pairs(_py_pair_values(vals, j, i, op))
        return tally
    for i, j in chunks:
        num, den = pair_values(vs, i, j, op)
        tally.add_arrays(num, den)
        if both_orientations:
            if op == "div":
                sign = np.sign(num)
                tally.add_arrays(den * sign, num * sign)
            else:
                tally.add_arrays(-num, den)
    return tally


def edge_tally(vs: ValueSet, graph: EdgeGraph, mode, max_pairs: int = CHUNK) -> ValueTally:
    mode = Mode(mode)
    if graph.vertex_count != len(vs):
        raise ValueError("graph and value set sizes differ")
    return tally_pairs(vs, graph.iter_chunks(max_pairs), _MODE_OP[mode], both_orientations=mode.oriented)


def edge_stats(vs: ValueSet, graph: EdgeGraph, mode, max_pairs: int = CHUNK) -> EdgeValueStats:
    """Distinct values of ``mode`` along the edges of ``graph``.

    SUM and PRODUCT count one event per edge. RATIO and DIFFERENCE count
    both orientations, which gives two events per edge.
    """
    mode = Mode(mode)
    return edge_tally(vs, graph, mode, max_pairs).stats(mode)


def full_tally(vs: ValueSet, op: str, ordered: bool = True, max_pairs: int = CHUNK) -> ValueTally:
    """Tally over all pairs of ``vs`` including the diagonal.

    ``ordered=True`` covers all n^2 ordered pairs. ``ordered=False`` covers
    pairs with i <= j, which is enough for the symmetric operations.
    """
    n = len(vs)
    idx = np.arange(n, dtype=np.int64)
    if ordered:
        chunks = Bipartite(idx, idx).chunks(max_pairs)
    else:
        chunks = _upper_with_diagonal(n, max_pairs)
    return tally_pairs(vs, chunks, op)


def _upper_with_diagonal(n: int, max_pairs: int):
    yield np.arange(n, dtype=np.int64), np.arange(n, dtype=np.int64)
    yield from Clique(np.arange(n, dtype=np.int64)).chunks(max_pairs)


def sumset_size(vs: ValueSet) -> int:
    """|A + A| over all pairs (a, a) included."""
    return full_tally(vs, "add", ordered=False).distinct_count


def productset_size(vs: ValueSet) -> int:
    return full_tally(vs, "mul", ordered=False).distinct_count


def ratioset_size(vs: ValueSet) -> int:
    return full_tally(vs, "div").distinct_count


def differenceset_size(vs: ValueSet) -> int:
    return full_tally(vs, "sub").distinct_count
