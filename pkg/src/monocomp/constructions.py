"""Gyárfás's affine-plane coloring of K_n and its restriction to subgraphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotPrimePower, TooSmallN, UnsupportedOrder, UnsupportedR
from .finite_geometry import AffinePlane, build_affine_plane, build_field, factor_prime_power
from .graph_core import EdgeColoring, Graph


@dataclass(frozen=True, eq=False)
class GyarfasColoring:
    n: int
    r: int
    plane: AffinePlane
    cluster_of: np.ndarray
    point_of: np.ndarray
    coloring: EdgeColoring

    @property
    def num_clusters(self) -> int:
        return (self.r - 1) ** 2

    @property
    def graph(self) -> Graph:
        return Graph.complete(self.n)

    def cluster_members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(self.cluster_of == cluster)


def gyarfas_supported(n: int, r: int) -> bool:
    try:
        _check_params(n, r)
    except (UnsupportedR, TooSmallN):
        return False
    return True


def _check_params(n: int, r: int) -> None:
    if r < 3:
        raise UnsupportedR(f"the construction needs r >= 3, got r={r}")
    try:
        factor_prime_power(r - 1)
    except NotPrimePower:
        raise UnsupportedR(f"r - 1 = {r - 1} is not a prime power") from None
    if n < (r - 1) ** 2:
        raise TooSmallN(f"need n >= (r-1)^2 = {(r - 1) ** 2}, got n={n}")


def gyarfas_coloring(n: int, r: int) -> GyarfasColoring:
    """Color K_n by the direction of the line through the endpoints' cluster points.

    Cluster ``c`` sits on affine point ``c`` and holds vertices
    ``floor(v * (r-1)^2 / n) == c``.  Inside a cluster the edges, taken in
    lexicographic order, cycle through the colors starting at ``c mod r``.
    """
    _check_params(n, r)
    q = r - 1
    try:
        plane = build_affine_plane(build_field(q))
    except UnsupportedOrder as exc:
        raise UnsupportedR(str(exc)) from None
    nclusters = q * q
    cluster_of = (np.arange(n, dtype=np.int64) * nclusters) // n
    point_of = np.arange(nclusters, dtype=np.int64)

    direction = plane.class_of_line()[plane.line_through()]  # -1 on the diagonal
    u, v = np.triu_indices(n, 1)
    cu, cv = cluster_of[u], cluster_of[v]
    colors = direction[point_of[cu], point_of[cv]] + 1

    intra = np.flatnonzero(cu == cv)
    cl = cu[intra]
    # rank of each intra-cluster edge among its cluster's edges, in lexicographic order
    order = np.argsort(cl, kind="stable")
    starts = np.searchsorted(cl[order], np.arange(nclusters))
    rank = np.empty(len(intra), dtype=np.int64)
    rank[order] = np.arange(len(intra)) - starts[cl[order]]
    colors[intra] = (cl % r + rank) % r + 1

    for arr in (cluster_of, point_of):
        arr.setflags(write=False)
    return GyarfasColoring(n, r, plane, cluster_of, point_of, EdgeColoring(r, colors))


def induced_coloring(base: GyarfasColoring, G: Graph) -> EdgeColoring:
    """Restrict the K_n coloring to the edges of ``G``."""
    if G.n != base.n:
        raise ValueError(f"graph has {G.n} vertices, construction has {base.n}")
    n = base.n
    idx = G.u * (2 * n - G.u - 1) // 2 + (G.v - G.u - 1)
    return EdgeColoring(base.r, base.coloring.colors[idx])


@dataclass(frozen=True)
class PredictedFractions:
    conjectured: Fraction
    proven: Fraction
    vertex: Fraction


def predicted_fractions(r: int) -> PredictedFractions:
    if r < 2:
        raise ValueError("need r >= 2")
    return PredictedFractions(
        conjectured=Fraction(1, r * (r - 1)),
        proven=1 / (Fraction(r * r - r) + Fraction(5, 4)),
        vertex=Fraction(1, r - 1),
    )
