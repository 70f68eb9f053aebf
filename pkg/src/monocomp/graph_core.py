"""Graphs, edge colorings, multipartite structures and monochromatic components.

A :class:`Graph` stores its edges as two parallel int64 arrays ``u < v`` in
lexicographic order, so an edge's position in that order is its stable index
and an :class:`EdgeColoring` is a flat array aligned with it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import TooLarge

MATERIALIZE_LIMIT = 5000


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _frozen_int64(a) -> np.ndarray:
    """Read-only int64 array; writable inputs are copied so the caller's array stays writable."""
    arr = np.asarray(a, dtype=np.int64)
    if arr.flags.writeable or not arr.flags.c_contiguous:
        arr = np.array(arr, dtype=np.int64, order="C")
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        u = _frozen_int64(self.u)
        v = _frozen_int64(self.v)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("edge endpoint arrays must be 1-d and equal length")
        if len(u):
            if u.min() < 0 or v.max() >= self.n or np.any(u >= v):
                raise ValueError("edges must satisfy 0 <= u < v < n")
            keys = u * self.n + v
            if np.any(np.diff(keys) <= 0):
                raise ValueError("edges must be sorted lexicographically without duplicates")
        object.__setattr__(self, "u", _readonly(u))
        object.__setattr__(self, "v", _readonly(v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build from unordered pairs in any order; self-loops and repeats are rejected."""
        arr = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
        lo = arr.min(axis=1)
        hi = arr.max(axis=1)
        if np.any(lo == hi):
            raise ValueError("self-loops are not allowed")
        if len(arr) and (lo.min() < 0 or hi.max() >= n):
            raise ValueError(f"vertex id out of range for n={n}")
        order = np.lexsort((hi, lo))
        lo, hi = lo[order], hi[order]
        if len(lo) > 1 and np.any((lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])):
            raise ValueError("duplicate edge")
        return cls(n, lo, hi)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        u, v = np.triu_indices(n, 1)
        return cls(n, u, v)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, np.zeros(0, np.int64), np.zeros(0, np.int64))

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.u.tolist(), self.v.tolist()))

    @cached_property
    def keys(self) -> np.ndarray:
        """Sorted linear keys ``u * n + v``, one per edge."""
        return _readonly(self.u * self.n + self.v)

    @cached_property
    def degrees(self) -> np.ndarray:
        return _readonly(np.bincount(np.concatenate([self.u, self.v]), minlength=self.n))

    @cached_property
    def adjacency(self) -> list[np.ndarray]:
        ends = np.concatenate([self.u, self.v])
        other = np.concatenate([self.v, self.u])
        order = np.lexsort((other, ends))
        splits = np.cumsum(self.degrees)[:-1]
        return [_readonly(a) for a in np.split(other[order], splits)]

    def edge_indices(self, us, vs) -> np.ndarray:
        """Index of each edge (us[i], vs[i]) with us < vs, or -1 when absent."""
        keys = np.asarray(us, dtype=np.int64) * self.n + np.asarray(vs, dtype=np.int64)
        if self.m == 0:
            return np.full(len(keys), -1, dtype=np.int64)
        pos = np.minimum(np.searchsorted(self.keys, keys), self.m - 1)
        return np.where(self.keys[pos] == keys, pos, -1)

    def subgraph_mask(self, mask) -> "Graph":
        mask = np.asarray(mask, dtype=bool)
        return Graph(self.n, self.u[mask], self.v[mask])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.u, other.u) and np.array_equal(self.v, other.v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    r: int
    colors: np.ndarray

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one color")
        c = _frozen_int64(self.colors)
        if c.ndim != 1:
            raise ValueError("colors must be a flat array")
        if len(c) and (c.min() < 1 or c.max() > self.r):
            raise ValueError(f"colors must lie in 1..{self.r}")
        object.__setattr__(self, "colors", _readonly(c))

    def check_matches(self, G: Graph) -> None:
        if len(self.colors) != G.m:
            raise ValueError(f"coloring has {len(self.colors)} entries but graph has {G.m} edges")

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.colors, minlength=self.r + 1)[1:]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.colors, other.colors)


@dataclass(frozen=True, eq=False)
class PartStructure:
    """Partition of ``range(n)`` into at least two nonempty blocks."""

    parts: tuple[tuple[int, ...], ...]
    block_of: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        parts = tuple(tuple(sorted(int(x) for x in b)) for b in self.parts)
        if len(parts) < 2:
            raise ValueError("a part structure needs at least two blocks")
        if any(not b for b in parts):
            raise ValueError("blocks must be nonempty")
        n = sum(len(b) for b in parts)
        block_of = np.full(n, -1, dtype=np.int64)
        for i, b in enumerate(parts):
            for x in b:
                if not 0 <= x < n or block_of[x] >= 0:
                    raise ValueError("blocks must be disjoint and cover 0..n-1")
                block_of[x] = i
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "block_of", _readonly(block_of))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "PartStructure":
        labels = np.asarray(labels, dtype=np.int64)
        blocks = [np.flatnonzero(labels == b).tolist() for b in np.unique(labels)]
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(b) for b in self.parts], dtype=np.int64)

    def num_edges(self) -> int:
        """e(M) for the complete multipartite graph M."""
        s = self.sizes
        return (self.n * self.n - int((s * s).sum())) // 2


def vertex_mask(S, n: int) -> np.ndarray:
    """Boolean membership mask for a vertex collection; duplicates are ignored."""
    if isinstance(S, np.ndarray) and S.dtype == bool:
        if len(S) != n:
            raise ValueError("mask length must equal n")
        return S
    idx = np.asarray(list(S) if not isinstance(S, np.ndarray) else S, dtype=np.int64)
    if len(idx) and (idx.min() < 0 or idx.max() >= n):
        raise ValueError(f"vertex id out of range for n={n}")
    mask = np.zeros(n, dtype=bool)
    mask[idx] = True
    return mask


def count_edges_within(G: Graph, S) -> int:
    mS = vertex_mask(S, G.n)
    return int(np.count_nonzero(mS[G.u] & mS[G.v]))


def count_ordered_between(G: Graph, S, T) -> int:
    """Ordered pairs (s, t) in S x T that are adjacent; S and T may overlap."""
    mS = vertex_mask(S, G.n)
    mT = vertex_mask(T, G.n)
    return int(np.count_nonzero(mS[G.u] & mT[G.v]) + np.count_nonzero(mS[G.v] & mT[G.u]))


def multipartite_counts(P: PartStructure, S, T) -> tuple[int, int, int]:
    """``(e_M(S), e_M(T), e_M(S, T))`` without materialising M (the last is ordered)."""
    mS = vertex_mask(S, P.n)
    mT = vertex_mask(T, P.n)
    s = np.bincount(P.block_of[mS], minlength=P.k)
    t = np.bincount(P.block_of[mT], minlength=P.k)
    ns, nt = int(s.sum()), int(t.sum())
    e_s = (ns * ns - int((s * s).sum())) // 2
    e_t = (nt * nt - int((t * t).sum())) // 2
    e_st = ns * nt - int((s * t).sum())
    return e_s, e_t, e_st


def materialize_multipartite(P: PartStructure) -> Graph:
    if P.n > MATERIALIZE_LIMIT:
        raise TooLarge(f"refusing to materialise a multipartite graph on {P.n} > {MATERIALIZE_LIMIT} vertices")
    u, v = np.triu_indices(P.n, 1)
    keep = P.block_of[u] != P.block_of[v]
    return Graph(P.n, u[keep], v[keep])


def crossing_mask(G: Graph, P: PartStructure) -> np.ndarray:
    if P.n != G.n:
        raise ValueError("part structure and graph have different vertex counts")
    return P.block_of[G.u] != P.block_of[G.v]


def intersect_multipartite(G: Graph, P: PartStructure) -> Graph:
    """G with every edge inside a block removed, i.e. G ∩ M."""
    return G.subgraph_mask(crossing_mask(G, P))


@dataclass(frozen=True)
class Component:
    color: int
    edges: int
    vertices: int
    min_vertex: int

    def rank_key(self) -> tuple[int, int, int]:
        return (self.edges, self.vertices, -self.min_vertex)


@dataclass(frozen=True, eq=False)
class ComponentReport:
    n: int
    m: int
    r: int
    per_color: tuple[tuple[Component, ...], ...]
    labels: tuple[np.ndarray, ...] = field(repr=False)

    @cached_property
    def largest(self) -> Component | None:
        comps = [c for cs in self.per_color for c in cs]
        return max(comps, key=Component.rank_key) if comps else None

    @property
    def z(self) -> Fraction:
        if self.m == 0:
            return Fraction(0)
        return Fraction(self.largest.edges, self.m)

    @property
    def num_components(self) -> int:
        return sum(len(cs) for cs in self.per_color)

    @property
    def max_vertices(self) -> int:
        return max((c.vertices for cs in self.per_color for c in cs), default=0)

    def components(self, color: int) -> tuple[Component, ...]:
        return self.per_color[color - 1]

    def vertex_sets(self, color: int) -> list[np.ndarray]:
        lab = self.labels[color - 1]
        return [np.flatnonzero(lab == i) for i in range(len(self.per_color[color - 1]))]

    def edge_vector(self) -> tuple[int, ...]:
        return tuple(sorted((c.edges for cs in self.per_color for c in cs), reverse=True))


def monochromatic_components(G: Graph, C: EdgeColoring) -> ComponentReport:
    C.check_matches(G)
    per_color = []
    labels = []
    for color in range(1, C.r + 1):
        edges, verts, minv, label = _kernels.color_components(G.n, G.u, G.v, C.colors, color)
        per_color.append(
            tuple(Component(color, int(e), int(s), int(x)) for e, s, x in zip(edges, verts, minv))
        )
        labels.append(_readonly(label))
    return ComponentReport(G.n, G.m, C.r, tuple(per_color), tuple(labels))


def largest_component_edges(G: Graph, C: EdgeColoring) -> int:
    """Fast path for the largest monochromatic component edge count."""
    if G.m == 0:
        return 0
    return int(_kernels.max_component_edges(G.n, G.u, G.v, C.colors, C.r))
