"""Exact counting: brute force over tuples and inclusion-exclusion over colour sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Callable

import numpy as np

from ..graph import Colouring, Graph
from ..kernel import count_matching, first_matching, iter_key_blocks
from ..properties import PropertyFamily


@dataclass
class Decision:
    """A yes/no answer; ``witness`` is an ordered tuple of vertex ids when one was found."""

    answer: bool
    witness: tuple[int, ...] | None = None
    method: str = ""
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.answer


def _check_colouring(G: Graph, k: int, f: Colouring | None) -> None:
    if f is None:
        return
    if f.k != k:
        raise ValueError(f"colouring uses {f.k} colours but k={k}")
    if f.n != G.n:
        raise ValueError(f"colouring covers {f.n} vertices but the graph has {G.n}")


def count_exact_bruteforce(phi: PropertyFamily, G: Graph, k: int, f: Colouring | None = None,
                           threads: int = 1, budget: int | None = None) -> int:
    """Ordered k-tuples of distinct vertices satisfying phi_k (colourful ones only when f is given)."""
    _check_colouring(G, k, f)
    return count_matching(G, k, phi.accepts(k), colouring=f, threads=threads, budget=budget)


def count_subsets_bruteforce(phi: PropertyFamily, G: Graph, k: int, budget: int | None = None) -> int:
    """k-subsets having at least one ordering that satisfies phi_k."""
    accept = phi.accepts(k)
    per = factorial(k)
    total = 0
    for _, keys in iter_key_blocks(G, k, budget=budget):
        # blocks hold whole subsets, each followed by all of its orderings
        total += int(np.count_nonzero(accept(keys).reshape(-1, per).any(axis=1)))
    return total


def find_witness_bruteforce(phi: PropertyFamily, G: Graph, k: int, f: Colouring | None = None,
                            budget: int | None = None) -> tuple[int, ...] | None:
    _check_colouring(G, k, f)
    return first_matching(G, k, phi.accepts(k), colouring=f, budget=budget)


def decide_bruteforce(phi: PropertyFamily, G: Graph, k: int, f: Colouring | None = None,
                      budget: int | None = None) -> Decision:
    w = find_witness_bruteforce(phi, G, k, f, budget)
    return Decision(w is not None, w, "brute")


UncolouredCounter = Callable[[PropertyFamily, Graph, int], int]


def count_colourful_by_inclusion_exclusion(phi: PropertyFamily, G: Graph, k: int, f: Colouring,
                                           counter: UncolouredCounter | None = None,
                                           terms: list | None = None) -> int:
    """Colourful count from uncoloured counts on the subgraphs spanned by each colour subset.

    sum over S of (-1)^(k-|S|) * counter(G[vertices coloured from S]). A
    tuple whose colours are exactly T is counted by every S containing T,
    so the alternating sum keeps only T = [k]. ``terms`` collects
    ``(S, value)`` pairs if given.
    """
    _check_colouring(G, k, f)
    counter = counter or count_exact_bruteforce
    total = 0
    for size in range(k + 1):
        for S in combinations(range(1, k + 1), size):
            keep = [v for v in range(G.n) if f[v] in S]
            value = counter(phi, G.induced(keep), k)
            if terms is not None:
                terms.append((S, value))
            total += (-1) ** (k - size) * value
    return total
