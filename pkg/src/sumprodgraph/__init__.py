"""Sums, products, ratios and differences along the edges of a graph."""
from .constructions import (
    ConstructionOutput,
    build_blowup,
    build_blowup_restricted,
    build_case1,
    build_case2,
    build_matching,
    build_projection,
    build_ruzsa_digits,
    build_sumprod,
    compute_alpha_beta,
    ruzsa_tail,
)
from .energy import dyadic_extract, energy, prune_by_popularity, spectrum
from .exactnum import BigRat, coprime, first_primes, lpf
from .setgraph import EdgeGraph, EdgeValueStats, Mode, ValueSet, build_value_set, edge_stats

__version__ = "0.1.0"
