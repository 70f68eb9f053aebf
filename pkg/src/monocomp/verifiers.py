"""Exact and seeded checkers for the component-size inequalities.

Every comparison is done in exact rational arithmetic.  Each checker returns
a :class:`CheckOutcome` whose ``lhs``/``rhs`` are the two sides of the
binding inequality; ``margin = lhs - rhs``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from . import _kernels
from .constructions import predicted_fractions
from .errors import (
    Beta3ColorOutOfRange,
    DensityPreconditionViolated,
    EdgeInsideBlock,
    PreconditionViolated,
)
from .graph_core import (
    ComponentReport,
    EdgeColoring,
    Graph,
    PartStructure,
    count_edges_within,
    count_ordered_between,
    crossing_mask,
    monochromatic_components,
    multipartite_counts,
    vertex_mask,
)
from .util import as_fraction

Number = Union[int, Fraction]


@dataclass(frozen=True)
class CheckOutcome:
    check: str
    holds: bool
    lhs: Number
    rhs: Number
    strict: bool = False
    vacuous: bool = False
    context: dict = field(default_factory=dict, compare=False)

    @property
    def margin(self) -> Number:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "lhs": _num_json(self.lhs),
            "rhs": _num_json(self.rhs),
            "margin": _num_json(self.margin),
            "context": {k: _num_json(v) for k, v in self.context.items()},
        }


def _num_json(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _outcome(check, lhs, rhs, strict=False, **context) -> CheckOutcome:
    holds = lhs > rhs if strict else lhs >= rhs
    return CheckOutcome(check, bool(holds), lhs, rhs, strict=strict, context=context)


@dataclass(frozen=True)
class EpsilonParams:
    eps: Fraction
    c: Fraction
    c0: Fraction
    p: Fraction

    def __post_init__(self):
        for name in ("eps", "c", "c0", "p"):
            val = as_fraction(getattr(self, name))
            if not 0 < val < 1:
                raise ValueError(f"{name} must lie in (0, 1)")
            object.__setattr__(self, name, val)


@dataclass(frozen=True)
class CliqueOn:
    """The complete graph on a vertex subset, one of the two host shapes for density control."""

    vertices: tuple[int, ...]

    def __init__(self, vertices):
        object.__setattr__(self, "vertices", tuple(sorted(set(int(x) for x in vertices))))


# -- deterministic inequalities ------------------------------------------------


def check_pair_inequality(P: PartStructure, S, T) -> CheckOutcome:
    """e_M(S,T)^2 >= 4 e_M(S) e_M(T) for the complete multipartite graph M of ``P``."""
    e_s, e_t, e_st = multipartite_counts(P, S, T)
    return _outcome("pair_inequality", e_st * e_st, 4 * e_s * e_t, e_s=e_s, e_t=e_t, e_st=e_st)


def _components_of(H: Graph) -> np.ndarray:
    ones = np.ones(H.m, dtype=np.int64)
    return _kernels.color_component_edges(H.n, H.u, H.v, ones, 1)


def check_component_density(M_parts: PartStructure, H: Graph) -> CheckOutcome:
    """Some component H' of H ⊆ M has e(H') >= e(H)^2 / e(M)."""
    if H.n != M_parts.n:
        raise ValueError("H and the part structure have different vertex counts")
    inside = ~crossing_mask(H, M_parts)
    if inside.any():
        i = int(np.flatnonzero(inside)[0])
        raise EdgeInsideBlock(f"edge ({H.u[i]}, {H.v[i]}) lies inside a block")
    e_m = M_parts.num_edges()
    comps = _components_of(H)
    best = int(comps.max()) if len(comps) else 0
    return _outcome(
        "component_density",
        Fraction(best),
        Fraction(H.m * H.m, e_m),
        e_h=H.m,
        e_m=e_m,
        witness_edges=best,
        components=len(comps),
    )


# -- sparse random analogues ---------------------------------------------------


def check_density_control(G: Graph, H_spec, p, eps, density=None) -> CheckOutcome:
    """(1-eps) p e(H) <= e(H ∩ G) <= (1+eps) p e(H) for H a clique on a subset or a multipartite graph on V(G).

    ``density`` is the floor on e(H) / C(n, 2); it defaults to ``eps``.
    """
    p, eps = as_fraction(p), as_fraction(eps)
    density = eps if density is None else as_fraction(density)
    n = G.n
    if isinstance(H_spec, CliqueOn):
        s = len(H_spec.vertices)
        e_h = s * (s - 1) // 2
        e_hg = count_edges_within(G, H_spec.vertices)
        shape = f"clique({s})"
    elif isinstance(H_spec, PartStructure):
        if H_spec.n != n:
            raise ValueError("part structure must cover V(G)")
        e_h = H_spec.num_edges()
        e_hg = int(np.count_nonzero(crossing_mask(G, H_spec)))
        shape = f"multipartite(k={H_spec.k})"
    else:
        raise TypeError("H must be a CliqueOn or a PartStructure")
    pairs = n * (n - 1) // 2
    if e_h < density * pairs:
        raise DensityPreconditionViolated(f"e(H) = {e_h} < {density} * C({n}, 2)")
    mu = p * e_h
    low, high = (1 - eps) * mu, (1 + eps) * mu
    ctx = dict(shape=shape, e_h=e_h, e_hg=e_hg, mu=mu, low=low, high=high)
    if e_hg - low <= high - e_hg:
        return _outcome("density_control", Fraction(e_hg), low, **ctx, side="lower")
    return _outcome("density_control", high, Fraction(e_hg), **ctx, side="upper")


def check_degree_bound(G: Graph, S, p, eps, c0) -> CheckOutcome:
    """If G[S] has average degree >= c0 p (n-1) then |S| > avg_deg (1-eps) n / (p (n-1))."""
    p, eps, c0 = as_fraction(p), as_fraction(eps), as_fraction(c0)
    mask = vertex_mask(S, G.n)
    s = int(mask.sum())
    if s == 0:
        raise ValueError("S must be nonempty")
    n = G.n
    e = count_edges_within(G, mask)
    avg = Fraction(2 * e, s)
    floor = c0 * p * (n - 1)
    rhs = avg * (1 - eps) * n / (p * (n - 1))
    out = _outcome("degree_bound", Fraction(s), rhs, strict=True, size=s, edges=e, avg_degree=avg, floor=floor)
    if avg < floor:
        return CheckOutcome(out.check, True, out.lhs, out.rhs, strict=True, vacuous=True, context=out.context)
    return out


def check_sparse_pair_inequality(G: Graph, P: PartStructure, S, T, p, eps, c) -> CheckOutcome:
    """With G' = G ∩ M: e_G'(S,T) >= (1-eps) p e_M(S,T) and e_G'(S,T)^2 >= 4 (1-eps) e_G'(S) e_G'(T)."""
    p, eps, c = as_fraction(p), as_fraction(eps), as_fraction(c)
    n = G.n
    mS, mT = vertex_mask(S, n), vertex_mask(T, n)
    _, _, em_st = multipartite_counts(P, mS, mT)
    if em_st < c * n * n:
        raise PreconditionViolated(f"e_M(S,T) = {em_st} < {c} * n^2")
    Gp = G.subgraph_mask(crossing_mask(G, P))
    st = count_ordered_between(Gp, mS, mT)
    es = count_edges_within(Gp, mS)
    et = count_edges_within(Gp, mT)
    ctx = dict(e_m_st=em_st, e_gp_st=st, e_gp_s=es, e_gp_t=et, size_s=int(mS.sum()), size_t=int(mT.sum()))
    first = _outcome("sparse_pair_inequality", Fraction(st), (1 - eps) * p * em_st, **ctx, part="count")
    if not first.holds:
        return first
    return _outcome("sparse_pair_inequality", Fraction(st * st), 4 * (1 - eps) * es * et, **ctx, part="square")


def check_sparse_component_density(G: Graph, P: PartStructure, H: Graph, eps, c1, c2) -> CheckOutcome:
    """Some component H' of H ⊆ G ∩ M has e(H') e(G') >= (1-eps) e(H)^2."""
    eps, c1, c2 = as_fraction(eps), as_fraction(c1), as_fraction(c2)
    n = G.n
    if H.n != n or P.n != n:
        raise ValueError("G, H and the part structure must share the vertex set")
    biggest = int(P.sizes.max())
    if biggest > (1 - c1) * n:
        raise PreconditionViolated(f"min degree: a block has {biggest} > (1 - {c1}) * {n} vertices")
    gp_mask = crossing_mask(G, P)
    e_gp = int(gp_mask.sum())
    idx = G.edge_indices(H.u, H.v)
    if np.any(idx < 0) or not np.all(gp_mask[idx[idx >= 0]]):
        raise PreconditionViolated("subgraph: H is not contained in G ∩ M")
    if e_gp == 0 or Fraction(H.m, e_gp) < c2:
        raise PreconditionViolated(f"density: e(H) / e(G') = {H.m}/{e_gp} < {c2}")
    comps = _components_of(H)
    best = int(comps.max()) if len(comps) else 0
    return _outcome(
        "sparse_component_density",
        Fraction(best * e_gp),
        (1 - eps) * H.m * H.m,
        e_h=H.m,
        e_gp=e_gp,
        witness_edges=best,
    )


# -- headline bounds -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BoundVerdict:
    """Threshold comparisons for one coloring.

    ``achieved[t] >= thresholds[t]`` decides ``passed[t]``.  Edge thresholds
    compare the largest component's edge fraction (over e(G), or over C(n,2)
    for ``mindeg_r4``); vertex thresholds compare the largest vertex count
    over n.  ``required`` names the thresholds a theorem guarantees for this
    host; the others are reported only.
    """

    z: Fraction
    thresholds: dict
    achieved: dict
    passed: dict
    required: frozenset
    report: ComponentReport = field(repr=False)
    context: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.passed[t] for t in self.required)

    def failures(self) -> list[str]:
        return [t for t in sorted(self.required) if not self.passed[t]]

    def to_json(self) -> dict:
        return {
            "z": str(self.z),
            "largest_component_edges": self.report.largest.edges if self.report.largest else 0,
            "largest_component_vertices": self.report.max_vertices,
            "thresholds": {
                t: {
                    "threshold": str(self.thresholds[t]),
                    "achieved": str(self.achieved[t]),
                    "pass": self.passed[t],
                    "required": t in self.required,
                }
                for t in sorted(self.thresholds)
            },
            "pass": self.ok,
        }


def _is_complete(G: Graph) -> bool:
    return G.m == G.n * (G.n - 1) // 2


def verdict_bounds(G: Graph, C: EdgeColoring, r: int | None = None, beta=None, eps=Fraction(1, 10)) -> BoundVerdict:
    """Compare the largest monochromatic component against every applicable bound.

    ``r`` defaults to the coloring's color count.  ``beta`` switches on the
    minimum-degree thresholds; ``eps`` is the slack in the random-graph
    vertex bound.
    """
    C.check_matches(G)
    r = C.r if r is None else r
    report = monochromatic_components(G, C)
    n, m = G.n, G.m
    pairs = n * (n - 1) // 2
    z = report.z
    largest = report.largest.edges if report.largest else 0
    vfrac = Fraction(report.max_vertices, n) if n else Fraction(0)
    pred = predicted_fractions(r)
    complete = _is_complete(G)

    thresholds, achieved, required = {}, {}, set()
    thresholds["proven_1_6"], achieved["proven_1_6"] = pred.proven, z
    required.add("proven_1_6")
    if r >= 3:
        thresholds["conjectured_1_5"], achieved["conjectured_1_5"] = pred.conjectured, z
        if complete and r in (3, 4):
            required.add("conjectured_1_5")
    thresholds["vertex_gyarfas"], achieved["vertex_gyarfas"] = pred.vertex, vfrac
    if complete:
        required.add("vertex_gyarfas")
    eps = as_fraction(eps)
    thresholds["vertex_bd"], achieved["vertex_bd"] = (1 - eps) * pred.vertex, vfrac

    ctx = {"n": n, "m": m, "r": r, "complete": complete}
    if beta is not None:
        beta = as_fraction(beta)
        min_deg = int(G.degrees.min()) if n else 0
        host_ok = min_deg >= (1 - beta) * n - 1
        ctx.update(beta=str(beta), min_degree=min_deg, min_degree_hypothesis=host_ok)
        if r >= 4:
            thresholds["mindeg_r4"] = (1 - beta) ** 2 * pred.proven
            achieved["mindeg_r4"] = Fraction(largest, pairs)
            if host_ok and beta < Fraction(1, r - 1):
                required.add("mindeg_r4")
        elif r == 3:
            if beta > Fraction(1, 25):
                raise Beta3ColorOutOfRange(f"the 3-color minimum-degree bound needs beta <= 1/25, got {beta}")
            thresholds["mindeg_3color"], achieved["mindeg_3color"] = Fraction(1, 6), z
            if host_ok:
                required.add("mindeg_3color")

    passed = {t: achieved[t] >= thresholds[t] for t in thresholds}
    if m == 0:
        required.clear()
    return BoundVerdict(z, thresholds, achieved, passed, frozenset(required), report, ctx)

