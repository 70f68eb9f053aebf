"""Seeded samplers (G(n,p), minimum-degree hosts, fuzzing inputs) and Chernoff tails."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph_core import Graph, PartStructure
from .rng import RngSeed, SplitMix64, as_seed
from .util import as_fraction

SKIP_THRESHOLD = 0.1
_ROW_CHUNK = 1 << 22


def _pair_rows(n: int, pos: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map lexicographic pair indices to (u, v) with u < v."""
    rows = np.arange(n, dtype=np.int64)
    starts = rows * (2 * n - rows - 1) // 2
    u = np.searchsorted(starts, pos, side="right") - 1
    v = pos - starts[u] + u + 1
    return u, v


def sample_gnp_naive(n: int, p: float, seed: int | RngSeed) -> Graph:
    """One uniform draw per pair, pairs visited in lexicographic order."""
    rng = SplitMix64(as_seed(seed))
    total = n * (n - 1) // 2
    kept = []
    for lo in range(0, total, _ROW_CHUNK):
        size = min(_ROW_CHUNK, total - lo)
        hits = np.flatnonzero(rng.random_array(size) < p)
        kept.append(hits + lo)
    pos = np.concatenate(kept) if kept else np.zeros(0, np.int64)
    return Graph(n, *_pair_rows(n, pos))


def sample_gnp_skip(n: int, p: float, seed: int | RngSeed) -> Graph:
    """Geometric gap skipping: the gap to the next chosen pair is Geometric(p)."""
    rng = SplitMix64(as_seed(seed))
    total = n * (n - 1) // 2
    log_q = math.log1p(-p)
    chunks = []
    last = -1
    batch = max(1024, int(total * p * 1.05) + 64)
    while last < total:
        # 1 - U lies in (0, 1], so the log is finite
        gaps = np.floor(np.log1p(-rng.random_array(batch)) / log_q).astype(np.int64)
        pos = last + np.cumsum(gaps + 1)
        chunks.append(pos[pos < total])
        last = int(pos[-1])
        batch = max(1024, int((total - last) * p * 1.05) + 64)
    pos = np.concatenate(chunks)
    return Graph(n, *_pair_rows(n, pos))


def sample_gnp(n: int, p: float, seed: int | RngSeed) -> Graph:
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if p == 0:
        return Graph.empty(n)
    if p == 1:
        return Graph.complete(n)
    if p < SKIP_THRESHOLD:
        return sample_gnp_skip(n, p, seed)
    return sample_gnp_naive(n, p, seed)


def min_degree_graph(n: int, beta) -> Graph:
    """K_n minus a circulant, so every vertex has degree at least (1 - beta) n - 1.

    With b = floor(beta * n) the degree is exactly n - 1 - b, except when n
    and b are both odd, where it is n - b.
    """
    beta = as_fraction(beta)
    if not 0 <= beta < 1:
        raise ValueError("beta must lie in [0, 1)")
    b = math.floor(beta * n)
    if b > n - 1:
        raise ValueError(f"floor(beta*n) = {b} exceeds n - 1")
    u, v = np.triu_indices(n, 1)
    d = np.minimum(v - u, n - (v - u))
    drop = d <= b // 2
    if b % 2 == 1 and n % 2 == 0:
        drop |= d == n // 2
    return Graph(n, u[~drop], v[~drop])


def random_subset(n: int, density: float, seed: int | RngSeed) -> np.ndarray:
    rng = SplitMix64(as_seed(seed))
    return np.flatnonzero(rng.random_array(n) < density)


def random_part_structure(n: int, k_max: int, seed: int | RngSeed) -> PartStructure:
    if not 2 <= k_max <= n:
        raise ValueError("need 2 <= k_max <= n")
    rng = SplitMix64(as_seed(seed))
    k = 2 + rng.randbelow(k_max - 1)
    labels = rng.randbelow_array(n, k)
    sizes = np.bincount(labels, minlength=k)
    for b in range(k):
        if sizes[b] == 0:
            donor = int(np.argmax(sizes))
            x = int(np.flatnonzero(labels == donor)[-1])
            labels[x] = b
            sizes[donor] -= 1
            sizes[b] += 1
    return PartStructure.from_labels(labels)


@dataclass(frozen=True)
class ChernoffQuery:
    mu: float
    delta: float

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError("mu must be nonnegative")
        if self.delta <= 0:
            raise ValueError("delta must be positive")


@dataclass(frozen=True)
class ChernoffTails:
    upper: float
    lower: float | None
    two_sided: float | None


def chernoff_upper(mu: float, delta: float) -> float:
    """Bound on P(X >= (1 + delta) mu)."""
    ChernoffQuery(mu, delta)
    return math.exp(-delta * delta * mu / (2 + delta))


def chernoff_lower(mu: float, delta: float) -> float:
    """Bound on P(X <= (1 - delta) mu), for 0 < delta < 1."""
    ChernoffQuery(mu, delta)
    if delta >= 1:
        raise ValueError("the lower-tail bound needs delta < 1")
    return math.exp(-delta * delta * mu / 2)


def chernoff_two_sided(mu: float, delta: float) -> float:
    """Bound on P(|X - mu| >= delta mu), for 0 < delta < 1."""
    ChernoffQuery(mu, delta)
    if delta >= 1:
        raise ValueError("the two-sided bound needs delta < 1")
    return 2 * math.exp(-delta * delta * mu / 3)


def chernoff_tails(q: ChernoffQuery) -> ChernoffTails:
    """All three bounds; the lower and two-sided ones are None when delta >= 1."""
    if q.delta >= 1:
        return ChernoffTails(chernoff_upper(q.mu, q.delta), None, None)
    return ChernoffTails(
        chernoff_upper(q.mu, q.delta),
        chernoff_lower(q.mu, q.delta),
        chernoff_two_sided(q.mu, q.delta),
    )


