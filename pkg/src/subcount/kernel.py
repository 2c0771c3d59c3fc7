"""Vectorised enumeration of ordered k-tuples of distinct vertices.

Every tuple ``(v_1, ..., v_k)`` is reduced to the colex key of the labelled
graph ``G[v_1, ..., v_k]``. Tuples are produced as all k-subsets times all
``k!`` orderings, in blocks small enough to keep memory flat. Blocks are
independent, so they can be farmed out to threads and the per-block counts
added up; the total does not depend on the partition.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from itertools import combinations, islice, permutations
from math import comb, factorial
from typing import Callable, Iterator

import numpy as np

from .config import DEFAULT_BUDGET, MAX_KEY_ORDER
from .errors import GuardError
from .graph import Colouring, Graph, falling_factorial, pairs

BLOCK_ROWS = 1 << 21

KeyFilter = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def permutation_array(k: int) -> np.ndarray:
    arr = np.array(list(permutations(range(k))), dtype=np.intp).reshape(factorial(k), k)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def _pair_arrays(k: int) -> tuple[np.ndarray, np.ndarray]:
    ps = pairs(k)
    return (np.array([a for a, _ in ps], dtype=np.intp),
            np.array([b for _, b in ps], dtype=np.intp))


def check_order(k: int) -> None:
    if k > MAX_KEY_ORDER:
        raise GuardError(f"labelled keys for k={k} do not fit a 64-bit word", projected=k,
                         limit=MAX_KEY_ORDER)


def tuple_keys(mat: np.ndarray, tuples: np.ndarray) -> np.ndarray:
    """Colex keys of the labelled graphs induced by each row of ``tuples``."""
    k = tuples.shape[1]
    keys = np.zeros(tuples.shape[0], dtype=np.int64)
    a_idx, b_idx = _pair_arrays(k)
    for bit, (a, b) in enumerate(zip(a_idx, b_idx)):
        keys |= mat[tuples[:, a], tuples[:, b]].astype(np.int64) << bit
    return keys


def _combination_blocks(n: int, k: int, rows: int, vertices: np.ndarray | None) -> Iterator[np.ndarray]:
    it = combinations(range(n), k)
    while True:
        chunk = list(islice(it, rows))
        if not chunk:
            return
        arr = np.array(chunk, dtype=np.intp).reshape(len(chunk), k)
        yield arr if vertices is None else vertices[arr]


def projected_tuples(n: int, k: int) -> int:
    return falling_factorial(n, k)


def enforce_budget(projected: int, budget: int | None, what: str) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if projected > limit:
        raise GuardError(f"{what} would visit too many candidates", projected=projected, limit=limit)


def _colourful_rows(combos: np.ndarray, colours: np.ndarray, k: int) -> np.ndarray:
    if combos.shape[0] == 0 or k == 0:
        return combos
    seen = np.zeros(combos.shape[0], dtype=np.int64)
    for j in range(combos.shape[1]):
        seen |= np.left_shift(1, colours[combos[:, j]] - 1)
    return combos[seen == (1 << k) - 1]


def iter_key_blocks(G: Graph, k: int, colouring: Colouring | None = None,
                    budget: int | None = None) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(tuples, keys)`` blocks covering every ordered k-tuple once.

    With a colouring only colourful tuples are produced.
    """
    check_order(k)
    n = G.n
    if k > n:
        return
    enforce_budget(projected_tuples(n, k), budget, "tuple enumeration")
    if colouring is not None and colouring.n != n:
        raise ValueError("colouring does not match the graph")
    if k == 0:
        if colouring is None or colouring.k == 0:
            yield np.zeros((1, 0), dtype=np.intp), np.zeros(1, dtype=np.int64)
        return
    mat = G.matrix()
    perms = permutation_array(k)
    rows = max(1, BLOCK_ROWS // perms.shape[0])
    colours = colouring.as_array() if colouring is not None else None
    for combos in _combination_blocks(n, k, rows, None):
        if colours is not None:
            combos = _colourful_rows(combos, colours, k)
            if combos.shape[0] == 0:
                continue
        tuples = combos[:, perms].reshape(-1, k)
        yield tuples, tuple_keys(mat, tuples)


def count_matching(G: Graph, k: int, accept: KeyFilter, colouring: Colouring | None = None,
                   threads: int = 1, budget: int | None = None) -> int:
    """Number of ordered k-tuples whose key passes ``accept``."""
    blocks = iter_key_blocks(G, k, colouring, budget)

    def work(block):
        _, keys = block
        return int(np.count_nonzero(accept(keys)))

    if threads <= 1:
        return sum(work(b) for b in blocks)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(work, blocks))


def first_matching(G: Graph, k: int, accept: KeyFilter, colouring: Colouring | None = None,
                   budget: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically-first (by subset, then ordering) accepted tuple, or None."""
    for tuples, keys in iter_key_blocks(G, k, colouring, budget):
        hit = np.flatnonzero(accept(keys))
        if hit.size:
            return tuple(int(v) for v in tuples[hit[0]])
    return None


def key_set_filter(keys: set[int] | frozenset[int]) -> KeyFilter:
    arr = np.fromiter(sorted(keys), dtype=np.int64, count=len(keys))

    def accept(block: np.ndarray) -> np.ndarray:
        return np.isin(block, arr)

    return accept


def subset_count(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
