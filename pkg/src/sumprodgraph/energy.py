"""Additive / multiplicative energy, multiplicity spectra and dyadic extraction.

The spectrum of A is the map t -> m(t) counting ordered pairs (a, b) in A^2
with a - b = t (additive) or a / b = t (multiplicative). The diagonal is
included. The energy is sum m(t)^2.

Dyadic extraction groups the t-values into levels 2^k <= m(t) < 2^(k+1). It
keeps the level carrying the most energy and joins a to b whenever a - b
(or a / b) lies in that level. Every inequality the construction promises is
checked in exact arithmetic by :meth:`DyadicExtraction.inequalities`, with
the logarithm replaced by the level count L = floor(log2 n) + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .setgraph import (
    CHUNK,
    Bipartite,
    Codec,
    DivisionHazard,
    EdgeGraph,
    Mode,
    ValueSet,
    _MODE_OP,
    _count_keys,
    _py_pair_values,
    edge_tally,
    full_tally,
    pair_values,
    productset_size,
    sumset_size,
)


class EnergyMode(str, Enum):
    ADDITIVE = "add"
    MULTIPLICATIVE = "mul"

    @property
    def op(self) -> str:
        return "sub" if self is EnergyMode.ADDITIVE else "div"


def _mode(mode) -> EnergyMode:
    if isinstance(mode, EnergyMode):
        return mode
    aliases = {"additive": "add", "multiplicative": "mul"}
    return EnergyMode(aliases.get(str(mode).lower(), str(mode).lower()))


def _check(vs: ValueSet, mode: EnergyMode) -> None:
    if mode is EnergyMode.MULTIPLICATIVE and vs.has_zero:
        raise DivisionHazard("multiplicative energy needs 0 not in the set")


@dataclass
class MultiplicitySpectrum:
    mode: EnergyMode
    entries: dict[Fraction, int]

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def energy(self) -> int:
        return sum(m * m for m in self.entries.values())

    def __getitem__(self, t) -> int:
        return self.entries.get(Fraction(t), 0)


def spectrum(vs: ValueSet, mode) -> MultiplicitySpectrum:
    mode = _mode(mode)
    _check(vs, mode)
    return MultiplicitySpectrum(mode, dict(full_tally(vs, mode.op).to_counter()))


def _spectrum_arrays(vs: ValueSet, mode: EnergyMode):
    """``(num, den, counts)`` of the multiplicity spectrum, sorted by key."""
    tally = full_tally(vs, mode.op)
    if tally.codec is not None:
        return tally.arrays()
    items = sorted(tally.as_pairs().items())
    num = np.array([k[0] for k, _ in items], dtype=object)
    den = np.array([k[1] for k, _ in items], dtype=object)
    return num, den, np.array([c for _, c in items], dtype=np.int64)


def energy(vs: ValueSet, mode) -> int:
    """Number of ordered quadruples with a+b = c+d (or ab = cd)."""
    mode = _mode(mode)
    _check(vs, mode)
    tally = full_tally(vs, mode.op)
    if tally.codec is None:
        return sum(c * c for c in tally.as_pairs().values())
    _, _, counts = tally.arrays()
    counts = counts.astype(object) if len(vs) > (1 << 20) else counts
    return int(np.dot(counts, counts))


@dataclass
class DyadicExtraction:
    mode: EnergyMode
    n: int
    K: Fraction
    energy: int
    L: int
    level_sums: dict[int, int]
    k_star: int
    T: list[Fraction]
    multiplicities: list[int]
    pairs: np.ndarray = field(repr=False)
    graph: EdgeGraph = field(repr=False)

    @property
    def M(self) -> int:
        return len(self.T)

    @property
    def ordered_pair_count(self) -> int:
        return sum(self.multiplicities)

    @property
    def unordered_edge_count(self) -> int:
        return self.graph.edge_count

    @property
    def top_level_sum(self) -> int:
        return self.level_sums[self.k_star]

    def inequalities(self) -> dict[str, bool]:
        """The five extraction inequalities, all decided exactly."""
        n, K, L, E, M = self.n, self.K, self.L, self.energy, self.M
        S, opc = self.top_level_sum, self.ordered_pair_count
        return {
            "energy_cauchy_schwarz": E * K >= n ** 3,
            "level_pigeonhole": S * L >= E,
            "edge_count": Fraction(opc * opc) >= Fraction(M * n ** 3) / (4 * K * L),
            "M_range": Fraction(n) / (K * L) <= M <= 4 * K * L * n,
            "per_element_multiplicity": all(4 * M * m * m >= S for m in self.multiplicities),
        }

    def summary(self) -> dict:
        return {
            "mode": self.mode.value,
            "n": self.n,
            "K": str(self.K),
            "E": self.energy,
            "L": self.L,
            "k_star": self.k_star,
            "S_k_star": self.top_level_sum,
            "M": self.M,
            "ordered_pair_count": self.ordered_pair_count,
            "unordered_edge_count": self.unordered_edge_count,
            "invariants": self.inequalities(),
        }


def dyadic_extract(vs: ValueSet, mode) -> DyadicExtraction:
    """Pick the dyadic multiplicity level with the largest energy share.

    Ties between levels go to the smaller k. The returned graph keeps the
    ordered relation H (diagonal pairs included when t = 0 resp. t = 1 is
    selected). Its undirected edges are the off-diagonal closure of H.
    """
    mode = _mode(mode)
    _check(vs, mode)
    n = len(vs)
    if n == 0:
        raise ValueError("empty set")
    codec = Codec.for_op(vs, mode.op)
    if codec is not None and n * n <= CHUNK:
        # one pass: keys of all ordered pairs give both the spectrum and H
        i, j = np.divmod(np.arange(n * n, dtype=np.int64), n)
        keys = codec.encode(*pair_values(vs, i, j, mode.op))
        ukeys, counts = _count_keys(keys)
        num, den = codec.decode(ukeys)
    else:
        keys = None
        num, den, counts = _spectrum_arrays(vs, mode)
    size = sumset_size(vs) if mode is EnergyMode.ADDITIVE else productset_size(vs)
    # floor(log2 m) is exact in float64 since m <= n^2 < 2^53
    levels = np.frexp(counts.astype(np.float64))[1] - 1
    wide = counts.astype(object) if n > (1 << 20) else counts
    level_sums = {int(k): int(np.dot(wide[levels == k], wide[levels == k])) for k in np.unique(levels)}
    k_star = max(level_sums, key=lambda k: (level_sums[k], -k))
    sel = np.flatnonzero(levels == k_star)
    chosen = sorted((Fraction(int(num[i]), int(den[i])), int(counts[i])) for i in sel)
    T = [t for t, _ in chosen]
    if keys is not None:
        hit = np.isin(keys, ukeys[sel])
        pairs = np.stack([i[hit], j[hit]], axis=1)
    else:
        pairs = _pairs_with_values(vs, mode.op, set(T))
    return DyadicExtraction(
        mode=mode,
        n=n,
        K=Fraction(size, n),
        energy=sum(level_sums.values()),
        L=n.bit_length(),
        level_sums=level_sums,
        k_star=k_star,
        T=T,
        multiplicities=[m for _, m in chosen],
        pairs=pairs,
        graph=EdgeGraph.from_ordered_pairs(n, pairs),
    )


def _pairs_with_values(vs: ValueSet, op: str, targets: set[Fraction]) -> np.ndarray:
    """Ordered index pairs (i, j) with vs[i] op vs[j] in ``targets``."""
    idx = np.arange(len(vs), dtype=np.int64)
    codec = Codec.for_op(vs, op)
    found = []
    if codec is not None:
        tkeys = codec.encode(np.array([t.numerator for t in targets], dtype=np.int64),
                             np.array([t.denominator for t in targets], dtype=np.int64))
        for i, j in Bipartite(idx, idx).chunks(1 << 22):
            num, den = pair_values(vs, i, j, op)
            hit = np.isin(codec.encode(num, den), tkeys)
            found.append(np.stack([i[hit], j[hit]], axis=1))
    else:
        vals = [(v.numerator, v.denominator) for v in vs]
        tset = {(t.numerator, t.denominator) for t in targets}
        for i, j in Bipartite(idx, idx).chunks(1 << 22):
            hit = np.array([nd in tset for nd in _py_pair_values(vals, i, j, op)], dtype=bool)
            found.append(np.stack([i[hit], j[hit]], axis=1))
    return np.concatenate(found) if found else np.empty((0, 2), dtype=np.int64)


def prune_by_popularity(vs: ValueSet, graph: EdgeGraph, mode, top: int) -> EdgeGraph:
    """Keep the edges whose value is among the ``top`` most frequent values.

    Frequencies count edge events, so RATIO and DIFFERENCE count both
    orientations. For those modes an edge survives only when both of its
    values are popular. Ties at the cutoff go to the smaller value.
    """
    mode = Mode(mode)
    if top < 0:
        raise ValueError("top must be >= 0")
    tally = edge_tally(vs, graph, mode)
    if top >= tally.distinct_count:
        return graph
    popular = tally.popular(top)
    op = _MODE_OP[mode]
    kept = []
    if tally.codec is not None:
        codec = tally.codec
        pkeys = codec.encode(np.array([v.numerator for v in popular], dtype=np.int64),
                             np.array([v.denominator for v in popular], dtype=np.int64))
        for i, j in graph.iter_chunks():
            keep = np.isin(codec.encode(*pair_values(vs, i, j, op)), pkeys)
            if mode.oriented:
                keep &= np.isin(codec.encode(*pair_values(vs, j, i, op)), pkeys)
            kept.append(np.stack([i[keep], j[keep]], axis=1))
    else:
        vals = [(v.numerator, v.denominator) for v in vs]
        pset = {(v.numerator, v.denominator) for v in popular}
        for i, j in graph.iter_chunks():
            keep = np.array([nd in pset for nd in _py_pair_values(vals, i, j, op)], dtype=bool)
            if mode.oriented:
                keep &= np.array([nd in pset for nd in _py_pair_values(vals, j, i, op)], dtype=bool)
            kept.append(np.stack([i[keep], j[keep]], axis=1))
    pairs = np.concatenate(kept) if kept else np.empty((0, 2), dtype=np.int64)
    return EdgeGraph.from_pairs(graph.vertex_count, pairs)
