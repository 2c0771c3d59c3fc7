"""One-sided decision by vertex-deletion self-reduction.

An oracle answers "is there a satisfying tuple?" possibly with two-sided
error. Before answering YES we look for a witness: every vertex is
tentatively removed, and the removal is kept whenever the oracle still
says YES; otherwise the vertex is marked necessary. Once exactly k
vertices remain their orderings are checked directly, so every YES comes
with a verified tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable

import numpy as np

from ..graph import Colouring, Graph, LabelledGraph
from ..properties import PropertyFamily, evaluate_property
from .exact import count_exact_bruteforce
from .sampling import approximate_count_sampling

# oracle(graph, colouring or None) -> YES/NO
Oracle = Callable[[Graph, "Colouring | None"], bool]


@dataclass
class WitnessResult:
    answer: bool
    witness: tuple[int, ...] | None = None
    oracle_calls: int = 0
    necessary: list[int] = field(default_factory=list)
    flag: str | None = None

    def __bool__(self) -> bool:
        return self.answer


def exact_oracle(phi: PropertyFamily, k: int) -> Oracle:
    def oracle(G: Graph, f: Colouring | None) -> bool:
        return count_exact_bruteforce(phi, G, k, f) > 0

    return oracle


def sampling_oracle(phi: PropertyFamily, k: int, n: int, g_k, q_n, seed: int,
                    threads: int = 1) -> Oracle:
    """Sampler run with eps = 1/2 and delta = 1/(2n+1); YES iff the estimate reaches 1/2.

    ``n`` is the order of the original input graph. Every call draws from a
    fresh seed stream, so repeated calls are independent.
    """
    stream = np.random.SeedSequence(seed)
    delta = Fraction(1, 2 * n + 1)

    def oracle(G: Graph, f: Colouring | None) -> bool:
        child = int(stream.spawn(1)[0].generate_state(1, dtype=np.uint64)[0])
        est = approximate_count_sampling(phi, G, k, Fraction(1, 2), delta, g_k, q_n, child, f=f,
                                         threads=threads)
        return est.estimate >= Fraction(1, 2)

    return oracle


def _final_check(phi: PropertyFamily, G: Graph, k: int, alive: list[int],
                 f: Colouring | None) -> tuple[int, ...] | None:
    if f is not None and not f.is_colourful(alive):
        return None
    for order in permutations(alive):
        if evaluate_property(phi, k, LabelledGraph(G.induced(order))):
            return tuple(order)
    return None


def decide_via_witness_search(oracle: Oracle, phi: PropertyFamily, G: Graph, k: int,
                              f: Colouring | None = None) -> WitnessResult:
    """Vertices are visited in increasing id order."""
    if f is not None and (f.k != k or f.n != G.n):
        raise ValueError("colouring does not match the graph and k")
    calls = 0

    def ask(vs: list[int]) -> bool:
        nonlocal calls
        calls += 1
        sub = G.induced(vs)
        return oracle(sub, f.restrict(vs) if f is not None else None)

    alive = list(range(G.n))
    if len(alive) < k:
        return WitnessResult(False, None, 0, [], "fewer than k vertices remain")
    if not ask(alive):
        return WitnessResult(False, None, calls)
    necessary: list[int] = []
    for v in range(G.n):
        if len(alive) <= k:
            break
        trial = [u for u in alive if u != v]
        if ask(trial):
            alive = trial
        else:
            necessary.append(v)
            if len(necessary) == k + 1:
                return WitnessResult(False, None, calls, necessary)
    if len(alive) != k:
        return WitnessResult(False, None, calls, necessary, "fewer than k vertices remain")
    w = _final_check(phi, G, k, alive, f)
    if w is None:
        return WitnessResult(False, None, calls, necessary)
    assert evaluate_property(phi, k, LabelledGraph(G.induced(w))) == 1
    return WitnessResult(True, w, calls, necessary)
