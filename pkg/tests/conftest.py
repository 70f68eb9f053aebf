"""Independent pure-Python oracles shared by the test modules."""

from __future__ import annotations

from collections import defaultdict, deque
from itertools import combinations

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def bfs_components(n, edges, colors):
    """List of (color, edge_count, vertex_set) by breadth-first search per color."""
    out = []
    for c in sorted(set(colors)):
        adj = defaultdict(list)
        for (u, v), col in zip(edges, colors):
            if col == c:
                adj[u].append(v)
                adj[v].append(u)
        seen = set()
        for s in sorted(adj):
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            m = sum(1 for (u, v), col in zip(edges, colors) if col == c and u in comp)
            out.append((c, m, frozenset(comp)))
    return out


def edges_within(edges, S):
    S = set(S)
    return sum(1 for u, v in edges if u in S and v in S)


def ordered_between(edges, S, T):
    es = set(edges)
    return sum(1 for s in S for t in T if s != t and (min(s, t), max(s, t)) in es)


def multipartite_edges(labels):
    n = len(labels)
    return [(u, v) for u, v in combinations(range(n), 2) if labels[u] != labels[v]]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
