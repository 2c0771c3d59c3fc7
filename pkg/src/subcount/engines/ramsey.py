"""Clique-or-independent-set shortcuts: every graph on 2^(2k) vertices has a k-clique or a k-independent set."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..graph import Graph, falling_factorial
from ..properties import clique_or_is
from .exact import Decision, find_witness_bruteforce


def ramsey_threshold(k: int) -> int:
    return 2 ** (2 * k)


def decide_clique_or_is(G: Graph, k: int, budget: int | None = None) -> Decision:
    """YES outright once n >= 2^(2k); brute force below that."""
    if G.n >= ramsey_threshold(k):
        return Decision(True, None, "ramsey", {"threshold": ramsey_threshold(k)})
    w = find_witness_bruteforce(clique_or_is(), G, k, budget=budget)
    return Decision(w is not None, w, "brute", {"threshold": ramsey_threshold(k)})


def ramsey_density_bound(n: int, k: int) -> Fraction:
    """(R-k)!/R! * n!/(n-k)! with R = 2^(2k): a lower bound on clique-or-independent k-subsets."""
    R = ramsey_threshold(k)
    if n < R:
        raise ValueError(f"the bound needs n >= 2^(2k) = {R}, got n={n}")
    return Fraction(factorial(R - k), factorial(R)) * falling_factorial(n, k)
