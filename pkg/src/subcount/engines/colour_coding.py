"""Deciding the uncoloured problem through colourings.

A satisfying tuple is found by some colouring under which it is
colourful. With a k-perfect family every k-set is colourful under some
member, so the family mode is exact. With uniformly random colourings a
fixed k-set is colourful with probability k!/k^k, so
ceil(k^k/k! * ln(1/delta)) independent colourings miss it with
probability at most delta.
"""

from __future__ import annotations

from functools import lru_cache
from math import ceil, factorial, log
from typing import Callable

import numpy as np

from ..graph import Colouring, Graph, LabelledGraph
from ..properties import PropertyFamily, enumerate_minimal_labelled, evaluate_property
from ..treedecomp import heuristic_tree_decomposition
from .dp import count_colourful_copies_dp
from .exact import Decision, find_witness_bruteforce
from .hashing import build_k_perfect_family

MulticolourDecider = Callable[[PropertyFamily, Graph, int, Colouring], Decision]


def decide_multicolour_bruteforce(phi: PropertyFamily, G: Graph, k: int, f: Colouring) -> Decision:
    w = find_witness_bruteforce(phi, G, k, f)
    return Decision(w is not None, w, "multicolour-brute")


def decide_multicolour_dp(phi: PropertyFamily, G: Graph, k: int, f: Colouring) -> Decision:
    """For monotone properties: is some minimal labelled graph a colourful (not induced) copy?

    A colourful tuple satisfies a monotone phi_k exactly when its labelled
    graph contains a minimal element as a labelled subgraph, i.e. when the
    minimal element maps into G label by label.
    """
    if not phi.monotone:
        raise ValueError(f"the decomposition decider needs a monotone property; {phi.name} is not declared monotone")
    for hg in _minimal_cached(phi, k):
        H = hg.graph
        if count_colourful_copies_dp(H, heuristic_tree_decomposition(H), G, f) > 0:
            return Decision(True, None, "multicolour-dp", {"minimal_key": hg.key()})
    return Decision(False, None, "multicolour-dp")


def _minimal_cached(phi: PropertyFamily, k: int) -> list[LabelledGraph]:
    key = ("minimal_labelled", k)
    if key not in phi._memo:
        phi._memo[key] = enumerate_minimal_labelled(phi, k)
    return phi._memo[key]


DECIDERS: dict[str, MulticolourDecider] = {
    "brute": decide_multicolour_bruteforce,
    "dp": decide_multicolour_dp,
}


@lru_cache(maxsize=64)
def _family_colourings(n: int, k: int) -> tuple[Colouring, ...]:
    return tuple(build_k_perfect_family(n, k).colourings())


def random_repetitions(k: int, delta) -> int:
    return max(1, ceil(k ** k / factorial(k) * log(1 / float(delta))))


def decide_colour_coding(phi: PropertyFamily, G: Graph, k: int, mode: str = "family",
                         decider: MulticolourDecider | str = "brute", delta=0.01, seed: int = 0) -> Decision:
    """Run the multicolour decider on each colouring; YES as soon as one says YES."""
    if isinstance(decider, str):
        decider = DECIDERS[decider]
    n = G.n
    if k > n:
        return Decision(False, None, f"colour-coding/{mode}", {"colourings": 0})
    if k == 0:
        return Decision(bool(phi.value(0, 0)), () if phi.value(0, 0) else None, f"colour-coding/{mode}")
    if mode == "family":
        colourings = _family_colourings(n, k)
    elif mode == "random":
        reps = random_repetitions(k, delta)
        rng = np.random.default_rng(seed)
        colourings = (Colouring(rng.integers(1, k + 1, size=n).tolist(), k) for _ in range(reps))
    else:
        raise ValueError(f"unknown colour-coding mode {mode!r}")
    tried = 0
    for f in colourings:
        tried += 1
        res = decider(phi, G, k, f)
        if res.answer:
            if res.witness is not None:
                assert evaluate_property(phi, k, LabelledGraph(G.induced(res.witness))) == 1
            return Decision(True, res.witness, f"colour-coding/{mode}",
                            {"colourings": tried, "colouring": list(f.assignment)})
    return Decision(False, None, f"colour-coding/{mode}", {"colourings": tried})
