"""Monte Carlo estimation of the number of satisfying k-tuples.

Draw ``t`` ordered k-tuples of distinct vertices uniformly (with
replacement between draws), count the hits and scale by n!/(n-k)!. If at
least a ``1/(g_k q_n)`` fraction of all tuples satisfy the property
whenever any does, ``t = ceil(4 ln(1/delta) g_k q_n / eps^2)`` draws give
a (1 +- eps) estimate with probability at least 1 - delta. When no tuple
satisfies the property the estimate is exactly 0.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, log

import numpy as np

from ..graph import Colouring, Graph, falling_factorial
from ..kernel import check_order, tuple_keys
from ..properties import PropertyFamily

CHUNK = 1 << 16


@dataclass
class SampleEstimate:
    estimate: Fraction
    samples: int
    hits: int
    seed: int
    epsilon: Fraction
    delta: Fraction
    g_k: Fraction
    q_n: Fraction
    n: int
    k: int

    @property
    def scale(self) -> int:
        return falling_factorial(self.n, self.k)

    def as_dict(self) -> dict:
        return {"estimate": str(self.estimate), "estimate_float": float(self.estimate),
                "samples": self.samples, "hits": self.hits, "seed": self.seed,
                "epsilon": str(self.epsilon), "delta": str(self.delta),
                "g_k": str(self.g_k), "q_n": str(self.q_n), "n": self.n, "k": self.k}


def rational(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (floats read as written)."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def required_samples(epsilon, delta, g_k, q_n) -> int:
    """ceil(4 ln(1/delta) g_k q_n / eps^2)."""
    eps, dl, g, q = (rational(x) for x in (epsilon, delta, g_k, q_n))
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if not 0 < dl < 1:
        raise ValueError("delta must lie strictly between 0 and 1")
    if g <= 0 or q <= 0:
        raise ValueError("g_k and q_n must be positive")
    return max(1, ceil(4 * log(1 / float(dl)) * float(g * q / (eps * eps))))


def ramsey_density(k: int) -> int:
    """g_k for clique-or-independent-set on graphs with at least 2^(2k) vertices (q_n = 1).

    At least (R-k)!/R! * n!/(n-k)! subsets qualify, R = 2^(2k), each giving
    k! tuples, so the satisfying fraction of tuples is at least 1/C(R, k).
    """
    return comb(2 ** (2 * k), k)


def draw_tuples(rng: np.random.Generator, n: int, k: int, size: int) -> np.ndarray:
    """``size`` uniform ordered k-tuples of distinct vertices from range(n)."""
    picks = np.empty((size, k), dtype=np.int64)
    for i in range(k):
        d = rng.integers(0, n - i, size=size)
        if i:
            # the d-th unused vertex: step over earlier picks in increasing order
            earlier = np.sort(picks[:, :i], axis=1)
            for j in range(i):
                d = d + (d >= earlier[:, j])
        picks[:, i] = d
    return picks


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def approximate_count_sampling(phi: PropertyFamily, G: Graph, k: int, epsilon, delta, g_k, q_n,
                               seed: int, f: Colouring | None = None, threads: int = 1) -> SampleEstimate:
    """Sampling estimate of the (colourful, when ``f`` is given) satisfying tuple count."""
    t = required_samples(epsilon, delta, g_k, q_n)
    params = dict(seed=int(seed), epsilon=rational(epsilon), delta=rational(delta),
                  g_k=rational(g_k), q_n=rational(q_n),
                  n=G.n, k=k)
    if f is not None and (f.k != k or f.n != G.n):
        raise ValueError("colouring does not match the graph and k")
    check_order(k)
    n = G.n
    if k > n:
        return SampleEstimate(Fraction(0), 0, 0, **params)
    mat = G.matrix()
    accept = phi.accepts(k)
    colours = f.as_array() if f is not None else None
    full = (1 << k) - 1

    def work(index: int) -> int:
        size = min(CHUNK, t - index * CHUNK)
        tuples = draw_tuples(_chunk_rng(int(seed), index), n, k, size)
        ok = accept(tuple_keys(mat, tuples))
        if colours is not None:
            seen = np.zeros(size, dtype=np.int64)
            for j in range(k):
                seen |= np.left_shift(1, colours[tuples[:, j]] - 1)
            ok &= seen == full
        return int(np.count_nonzero(ok))

    chunks = range((t + CHUNK - 1) // CHUNK)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(work, chunks))
    else:
        hits = sum(work(i) for i in chunks)
    return SampleEstimate(Fraction(hits, t) * falling_factorial(n, k), t, hits, **params)


def ramsey_promise(k: int) -> tuple[int, int]:
    """(g_k, q_n) preset for clique-or-independent-set."""
    return ramsey_density(k), 1
