"""Search for colorings whose largest monochromatic component is small.

The objective of a coloring is the pair ``(max component edges, vector)``
where ``vector`` lists every monochromatic component's edge count in
descending order; objectives compare lexicographically, smaller is better.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .constructions import gyarfas_coloring, gyarfas_supported, induced_coloring
from .errors import BudgetExceeded
from .graph_core import EdgeColoring, Graph
from .rng import SplitMix64

Objective = tuple[int, tuple[int, ...]]

INITS = ("random", "gyarfas")
RESTART_STREAM_BASE = 1000


def _color_edges(G: Graph, colors: np.ndarray, color: int) -> np.ndarray:
    return _kernels.color_component_edges(G.n, G.u, G.v, colors, color)


def objective(G: Graph, C: EdgeColoring) -> Objective:
    C.check_matches(G)
    parts = [_color_edges(G, C.colors, c) for c in range(1, C.r + 1)]
    vec = np.sort(np.concatenate(parts))[::-1] if parts else np.zeros(0, np.int64)
    vec = tuple(int(x) for x in vec)
    return (vec[0] if vec else 0, vec)


# -- exhaustive oracle ---------------------------------------------------------


class _RollbackDSU:
    """Union by size without path compression, so every union can be undone."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.edges = [0] * n
        self.history: list[tuple[int, int, int]] = []

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def add_edge(self, a: int, b: int) -> int:
        """Insert an edge and return the edge count of the component that holds it."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.edges[ra] += 1
            self.history.append((ra, -1, 0))
            return self.edges[ra]
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        old = self.edges[ra]
        self.edges[ra] += self.edges[rb] + 1
        self.history.append((ra, rb, old))
        return self.edges[ra]

    def undo(self) -> None:
        ra, rb, old = self.history.pop()
        if rb < 0:
            self.edges[ra] -= 1
            return
        self.parent[rb] = rb
        self.size[ra] -= self.size[rb]
        self.edges[ra] = old


@dataclass(frozen=True)
class BruteForceResult:
    objective: Objective
    coloring: EdgeColoring
    evaluations: int


def brute_force_optimum(G: Graph, r: int, budget: int = 10**7) -> BruteForceResult:
    """Exact minimum objective over all r-colorings with the first edge fixed to color 1.

    Colors are assigned edge by edge in index order with one rollback
    union-find per color; a branch is cut once its running maximum already
    exceeds the best primary value found.
    """
    m = G.m
    if m == 0:
        return BruteForceResult((0, ()), EdgeColoring(r, np.zeros(0, np.int64)), 1)
    required = r ** (m - 1)
    if required > budget:
        raise BudgetExceeded(required, budget)
    us, vs = G.u.tolist(), G.v.tolist()
    dsus = [_RollbackDSU(G.n) for _ in range(r)]
    colors = [0] * m
    best: list = [None, None]  # objective, colors
    evaluations = 0

    def leaf_objective() -> Objective:
        vec = []
        for d in dsus:
            for x in range(G.n):
                if d.parent[x] == x and d.edges[x] > 0:
                    vec.append(d.edges[x])
        vec.sort(reverse=True)
        return (vec[0], tuple(vec))

    def rec(i: int, running_max: int) -> None:
        nonlocal evaluations
        if best[0] is not None and running_max > best[0][0]:
            return
        if i == m:
            evaluations += 1
            obj = leaf_objective()
            if best[0] is None or obj < best[0]:
                best[0], best[1] = obj, colors.copy()
            return
        choices = (0,) if i == 0 else range(r)
        for c in choices:
            size = dsus[c].add_edge(us[i], vs[i])
            colors[i] = c + 1
            rec(i + 1, max(running_max, size))
            dsus[c].undo()

    rec(0, 0)
    return BruteForceResult(best[0], EdgeColoring(r, np.array(best[1])), evaluations)


# -- simulated annealing -------------------------------------------------------


@dataclass(frozen=True)
class SearchParams:
    iterations: int = 1000
    restarts: int = 1
    initial_temperature: float | None = None  # None -> 0.05 * e(G)
    cooling: float = 0.999
    seed: int = 0
    init: str = "random"

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not 0 < self.cooling < 1:
            raise ValueError("cooling factor must lie in (0, 1)")
        if self.init not in INITS:
            raise ValueError(f"init must be one of {INITS}")


@dataclass(frozen=True)
class TracePoint:
    restart: int
    iteration: int
    objective: int


@dataclass(frozen=True, eq=False)
class SearchResult:
    coloring: EdgeColoring
    objective: Objective
    trace: tuple[TracePoint, ...]
    evaluations: int
    best_restart: int = 0
    params: SearchParams = field(default_factory=SearchParams)


class AnnealState:
    """Current coloring plus incrementally maintained per-color components.

    :meth:`recolor` touches only the two colors involved; undoing a move is
    recoloring the edge back.
    """

    def __init__(self, G: Graph, r: int, colors: np.ndarray, adjacency=None):
        self.G = G
        self.r = r
        self.colors = np.array(colors, dtype=np.int64)
        self.adjacency = adjacency if adjacency is not None else _kernels.csr_adjacency(G.n, G.u, G.v)
        self.label, self.cedges, self.deg = _kernels.inc_init(G.n, G.u, G.v, self.colors, r)
        self.maxes = self.cedges.max(axis=1) if G.n else np.zeros(r + 1, np.int64)
        self._mark = np.full(G.n, -1, dtype=np.int64)
        self._queue = np.empty(G.n, dtype=np.int64)
        self._stamp = 0

    @property
    def primary(self) -> int:
        return int(self.maxes.max())

    def component_edges(self, color: int) -> np.ndarray:
        row = self.cedges[color]
        return np.sort(row[row > 0])[::-1]

    def full_objective(self) -> Objective:
        vec = np.sort(self.cedges[1:][self.cedges[1:] > 0])[::-1]
        vec = tuple(int(x) for x in vec)
        return (vec[0] if vec else 0, vec)

    def recolor(self, edge: int, new_color: int) -> int:
        """Give ``edge`` color ``new_color`` and return the new largest component size."""
        if self.colors[edge] == new_color:
            return self.primary
        self._stamp += 1
        indptr, nbr, eid = self.adjacency
        return int(
            _kernels.inc_recolor(
                indptr, nbr, eid, self.G.u, self.G.v, self.colors,
                self.label, self.cedges, self.deg, self.maxes,
                self._mark, self._queue, self._stamp, edge, new_color,
            )
        )


def initial_colors(G: Graph, r: int, init: str, rng: SplitMix64) -> np.ndarray:
    if init == "gyarfas":
        if not gyarfas_supported(G.n, r):
            raise ValueError(f"gyarfas init needs r-1 a prime power and n >= (r-1)^2 (n={G.n}, r={r})")
        return np.array(induced_coloring(gyarfas_coloring(G.n, r), G).colors)
    return rng.randbelow_array(G.m, r) + 1


def anneal(G: Graph, r: int, params: SearchParams, start: EdgeColoring | None = None) -> SearchResult:
    """Metropolis search on the largest component's edge count with geometric cooling.

    Restart ``i`` draws from stream ``RESTART_STREAM_BASE + i`` of the seed;
    the best coloring over all restarts wins, earlier restarts on ties.
    """
    if G.m < 1:
        raise ValueError("graph has no edges")
    if r < 2:
        raise ValueError("need r >= 2")
    t0 = params.initial_temperature if params.initial_temperature is not None else 0.05 * G.m
    best_obj: Objective | None = None
    best_colors = None
    best_restart = 0
    trace: list[TracePoint] = []
    evaluations = 0

    adjacency = _kernels.csr_adjacency(G.n, G.u, G.v)
    for restart in range(params.restarts):
        rng = SplitMix64(params.seed, RESTART_STREAM_BASE + restart)
        colors = np.array(start.colors) if start is not None else initial_colors(G, r, params.init, rng)
        state = AnnealState(G, r, colors, adjacency)
        evaluations += 1
        current = state.primary
        obj = state.full_objective()
        if best_obj is None or obj < best_obj:
            best_obj, best_colors, best_restart = obj, state.colors.copy(), restart
            trace.append(TracePoint(restart, 0, obj[0]))
        temp = t0
        for it in range(1, params.iterations + 1):
            edge = rng.randbelow(G.m)
            old = int(state.colors[edge])
            new = rng.randbelow(r - 1) + 1
            if new >= old:
                new += 1
            proposed = state.recolor(edge, new)
            evaluations += 1
            delta = proposed - current
            if delta <= 0 or (temp > 0 and rng.random() < math.exp(-delta / temp)):
                current = proposed
                if current <= best_obj[0]:
                    obj = state.full_objective()
                    if obj < best_obj:
                        best_obj, best_colors, best_restart = obj, state.colors.copy(), restart
                        trace.append(TracePoint(restart, it, obj[0]))
            else:
                state.recolor(edge, old)
            temp *= params.cooling

    return SearchResult(
        EdgeColoring(r, best_colors), best_obj, tuple(trace), evaluations, best_restart, params
    )


def save_counterexample(path: str | Path, G: Graph, C: EdgeColoring) -> Path:
    """Write a coloring in the colored-graph format so a failing case can be replayed."""
    from .graph_io import write_graph

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    write_graph(path, G, C)
    return path
