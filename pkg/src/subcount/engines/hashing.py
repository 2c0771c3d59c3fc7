"""Deterministic k-perfect hash families.

Two stages. First a map into k^2 buckets that is injective on the given
k-set: the identity when n <= k^2, otherwise x -> ((a*x) mod p) mod k^2
for a prime p >= n and every a in 1..p-1. For a fixed k-set, each pair
collides for at most 2(p-1)/k^2 values of a, so fewer than p-1 values of
a are spoiled and some a is injective. Then a map from the buckets onto
[k] that is injective on k given buckets: the monotone step functions
cutting [0, k^2) into k intervals, which separate any k distinct buckets
(cut just below each of the upper k-1). Every composition is a colouring;
the family of all compositions is k-perfect. A greedy set cover then
drops redundant members when the coverage matrix is small enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from ..graph import Colouring

EXHAUSTIVE_LIMIT = 200_000
REDUCE_LIMIT = 50_000_000
SAMPLED_CHECKS = 20_000


@dataclass
class HashFamily:
    n: int
    k: int
    functions: list[tuple[int, ...]]  # colour of vertex x is functions[i][x], in 1..k
    validation: str | None = None       # "exhaustive", "sampled" or None
    valid: bool | None = None
    construction: str = ""

    def __len__(self) -> int:
        return len(self.functions)

    def colourings(self) -> list[Colouring]:
        return [Colouring(fn, self.k) for fn in self.functions]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _next_prime(n: int) -> int:
    p = max(2, n)
    while not _is_prime(p):
        p += 1
    return p


def _stage_one(n: int, k: int) -> np.ndarray:
    s = k * k
    x = np.arange(n, dtype=np.int64)
    if n <= s:
        return x[None, :]
    p = _next_prime(n)
    a = np.arange(1, p, dtype=np.int64)[:, None]
    return (a * x[None, :]) % p % s


def _stage_two(buckets: int, k: int) -> np.ndarray:
    """All step functions [buckets] -> [k] with k-1 strictly increasing cut points."""
    rows = []
    y = np.arange(buckets)
    for cuts in combinations(range(1, buckets), k - 1):
        rows.append(np.searchsorted(np.array(cuts), y, side="right"))
    return np.array(rows, dtype=np.int64).reshape(len(rows), buckets)


def _subsets(n: int, k: int) -> np.ndarray:
    return np.array(list(combinations(range(n), k)), dtype=np.int64).reshape(-1, k)


def _coverage(funcs: np.ndarray, subsets: np.ndarray, k: int) -> np.ndarray:
    """cov[i, j]: subset j is rainbow under function i (functions take values 0..k-1)."""
    full = (1 << k) - 1
    out = np.empty((funcs.shape[0], subsets.shape[0]), dtype=bool)
    step = max(1, 4_000_000 // max(1, subsets.size))
    for lo in range(0, funcs.shape[0], step):
        block = funcs[lo:lo + step][:, subsets]          # (b, s, k)
        seen = np.bitwise_or.reduce(np.left_shift(1, block), axis=2)
        out[lo:lo + step] = seen == full
    return out


def _greedy_cover(cov: np.ndarray) -> list[int]:
    uncovered = np.ones(cov.shape[1], dtype=bool)
    chosen = []
    while uncovered.any():
        gains = cov[:, uncovered].sum(axis=1)
        best = int(np.argmax(gains))
        if gains[best] == 0:
            break
        chosen.append(best)
        uncovered &= ~cov[best]
    return chosen


def build_k_perfect_family(n: int, k: int, validate: bool = True, seed: int = 0) -> HashFamily:
    """A k-perfect family of colourings of range(n) with colours 1..k.

    Deterministic in (n, k); ``seed`` only drives sampled validation.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if k == 1:
        fam = HashFamily(n, k, [tuple([1] * n)], construction="constant")
    elif n == k:
        fam = HashFamily(n, k, [tuple(range(1, n + 1))], construction="identity")
    else:
        first = _stage_one(n, k)
        buckets = min(n, k * k) if first.shape[0] == 1 else k * k
        second = _stage_two(buckets, k)
        funcs = second[:, first].reshape(-1, n)             # every composition
        funcs = np.unique(funcs, axis=0)
        construction = f"modular({first.shape[0]}) x steps({second.shape[0]})"
        s = comb(n, k)
        if funcs.shape[0] * s <= REDUCE_LIMIT:
            cov = _coverage(funcs, _subsets(n, k), k)
            keep = _greedy_cover(cov)
            funcs = funcs[sorted(keep)]
            construction += ", greedy cover"
        fam = HashFamily(n, k, [tuple(int(c) + 1 for c in row) for row in funcs],
                         construction=construction)
    if validate:
        validate_family(fam, seed=seed)
        if not fam.valid:
            raise AssertionError(f"hash family for n={n}, k={k} is not k-perfect")
    return fam


def validate_family(fam: HashFamily, seed: int = 0, exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                    samples: int = SAMPLED_CHECKS) -> HashFamily:
    """Check k-perfection, exhaustively when C(n,k) is small, else on random k-sets."""
    n, k = fam.n, fam.k
    funcs = np.array(fam.functions, dtype=np.int64).reshape(len(fam.functions), n) - 1
    if comb(n, k) <= exhaustive_limit:
        subsets = _subsets(n, k)
        fam.validation = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        subsets = np.sort(np.array([rng.choice(n, size=k, replace=False) for _ in range(samples)]), axis=1)
        fam.validation = "sampled"
    covered = np.zeros(subsets.shape[0], dtype=bool)
    for lo in range(0, funcs.shape[0], 256):
        covered |= _coverage(funcs[lo:lo + 256], subsets, k).any(axis=0)
        if covered.all():
            break
    fam.valid = bool(covered.all())
    return fam


def uncovered_subsets(fam: HashFamily) -> list[tuple[int, ...]]:
    """Exhaustive list of k-sets no member makes rainbow."""
    funcs = np.array(fam.functions, dtype=np.int64).reshape(len(fam.functions), fam.n) - 1
    subsets = _subsets(fam.n, fam.k)
    cov = _coverage(funcs, subsets, fam.k).any(axis=0)
    return [tuple(int(v) for v in subsets[j]) for j in np.flatnonzero(~cov)]
