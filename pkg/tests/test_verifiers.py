from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import bfs_components, edges_within, multipartite_edges, ordered_between
from monocomp.constructions import gyarfas_coloring, induced_coloring
from monocomp.errors import (
    Beta3ColorOutOfRange,
    DensityPreconditionViolated,
    EdgeInsideBlock,
    PreconditionViolated,
)
from monocomp.graph_core import EdgeColoring, Graph, PartStructure, intersect_multipartite
from monocomp.random_models import min_degree_graph, sample_gnp
from monocomp.suites import SparseParams, sparse_suite
from monocomp.verifiers import (
    CliqueOn,
    check_component_density,
    check_degree_bound,
    check_density_control,
    check_pair_inequality,
    check_sparse_component_density,
    check_sparse_pair_inequality,
    verdict_bounds,
)

K22 = PartStructure(((0, 1), (2, 3)))


@st.composite
def labelled_parts(draw, max_n=30):
    n = draw(st.integers(2, max_n))
    labels = draw(st.lists(st.integers(0, 5), min_size=n, max_size=n))
    if len(set(labels)) < 2:
        labels[0] = (labels[0] + 1) % 6
    return np.array(labels)


# -- pair inequality ---------------------------------------------------------------


def test_pair_inequality_equality_case():
    out = check_pair_inequality(K22, range(4), range(4))
    assert out.holds and (out.lhs, out.rhs) == (64, 64) and out.margin == 0


def test_pair_inequality_s_inside_block():
    out = check_pair_inequality(K22, [0, 1], [0, 2, 3])
    assert out.holds and out.rhs == 0


@given(labelled_parts(), st.data())
def test_pair_inequality_against_pair_scan(labels, data):
    n = len(labels)
    S = data.draw(st.sets(st.integers(0, n - 1)))
    T = data.draw(st.sets(st.integers(0, n - 1)))
    M = multipartite_edges(labels.tolist())
    out = check_pair_inequality(PartStructure.from_labels(labels), S, T)
    st_ = ordered_between(M, S, T)
    assert (out.lhs, out.rhs) == (st_ * st_, 4 * edges_within(M, S) * edges_within(M, T))
    assert out.holds


# -- component density ---------------------------------------------------------------


def test_component_density_whole_multipartite_graph():
    P = PartStructure(((0, 1, 2), (3, 4), (5,)))
    H = Graph.from_edges(6, multipartite_edges(P.block_of.tolist()))
    out = check_component_density(P, H)
    assert out.holds and out.margin == 0


def test_component_density_matching():
    P = PartStructure((tuple(range(4)), tuple(range(4, 8))))
    H = Graph.from_edges(8, [(i, i + 4) for i in range(4)])
    out = check_component_density(P, H)
    assert out.rhs == 1 and out.lhs == 1 and out.holds


def test_component_density_rejects_block_edges():
    with pytest.raises(EdgeInsideBlock):
        check_component_density(K22, Graph.from_edges(4, [(0, 1)]))


@given(labelled_parts(), st.data())
def test_component_density_fuzz(labels, data):
    M = multipartite_edges(labels.tolist())
    chosen = sorted(data.draw(st.sets(st.sampled_from(M)))) if M else []
    H = Graph.from_edges(len(labels), chosen) if chosen else Graph.empty(len(labels))
    out = check_component_density(PartStructure.from_labels(labels), H)
    best = max((m for _, m, _ in bfs_components(H.n, H.edges, [1] * H.m)), default=0)
    assert out.lhs == best and out.rhs == Fraction(H.m * H.m, len(M))
    assert out.holds


# -- sparse analogues -------------------------------------------------------------


def test_density_control_exact_at_p_one():
    K = Graph.complete(30)
    for H in (CliqueOn(range(20)), PartStructure.from_labels(np.arange(30) % 3)):
        out = check_density_control(K, H, 1, 0.01, density=0.1)
        assert out.holds and out.context["e_hg"] == out.context["mu"]


def test_density_control_fails_on_empty_graph():
    assert not check_density_control(Graph.empty(30), CliqueOn(range(30)), 0.3, 0.5).holds


def test_density_control_scope_and_precondition():
    with pytest.raises(DensityPreconditionViolated):
        check_density_control(Graph.complete(30), CliqueOn(range(5)), 1, 0.2, density=0.2)
    with pytest.raises(TypeError):
        check_density_control(Graph.complete(5), Graph.complete(5), 1, 0.2)


def test_degree_bound_examples():
    G = sample_gnp(100, 0.3, 1)
    out = check_degree_bound(G, [5], 0.3, 0.3, 0.2)
    assert out.vacuous and out.holds
    K = Graph.complete(40)
    assert check_degree_bound(K, range(40), 1, 0.01, 0.2).holds
    with pytest.raises(ValueError):
        check_degree_bound(K, [], 1, 0.3, 0.2)


def test_sparse_pair_inequality_examples():
    K = Graph.complete(40)
    P = PartStructure.from_labels(np.arange(40) % 4)
    assert check_sparse_pair_inequality(K, P, range(40), range(20), 1, 0.1, 0.05).holds
    with pytest.raises(PreconditionViolated):
        check_sparse_pair_inequality(K, P, [0], [4], 1, 0.5, 0.05)


def test_sparse_component_density_examples():
    G = sample_gnp(200, 0.3, 2)
    P = PartStructure.from_labels(np.arange(200) % 3)
    Gp = intersect_multipartite(G, P)
    assert check_sparse_component_density(G, P, Gp, 0.5, 0.2, 0.2).holds
    sparse = Graph(200, Gp.u[:: 5], Gp.v[:: 5])
    assert check_sparse_component_density(G, P, sparse, Fraction(999, 1000), 0.2, 0.2).holds
    with pytest.raises(PreconditionViolated):
        lopsided = PartStructure.from_labels((np.arange(200) < 190).astype(int))
        check_sparse_component_density(G, lopsided, intersect_multipartite(G, lopsided), 0.5, 0.2, 0.2)
    with pytest.raises(PreconditionViolated):
        check_sparse_component_density(G, P, Graph(200, Gp.u[:3], Gp.v[:3]), 0.5, 0.2, 0.2)
    with pytest.raises(PreconditionViolated):
        inside = G.subgraph_mask(P.block_of[G.u] == P.block_of[G.v])
        check_sparse_component_density(G, P, inside, 0.5, 0.2, 0.0)


@pytest.mark.parametrize(
    "seed,params,family",
    [
        (7, SparseParams(), "density_control"),
        (3, SparseParams(n=400, instances=200), "degree_bound"),
        (11, SparseParams(), "sparse_pair_inequality"),
        (13, SparseParams(), "sparse_component_density"),
    ],
)
def test_seeded_statistical_runs(seed, params, family):
    rep = sparse_suite(seed, params)
    fam = next(f for f in rep.families if f.check == family)
    assert fam.cases == params.instances
    assert fam.failures == 0


# -- verdicts ----------------------------------------------------------------------


def test_verdict_monochromatic():
    K = Graph.complete(8)
    v = verdict_bounds(K, EdgeColoring(3, np.ones(K.m, np.int64)))
    assert v.z == 1 and v.ok
    assert all(v.passed[t] for t in v.thresholds)


def test_verdict_gyarfas_k4_equality():
    g = gyarfas_coloring(4, 3)
    v = verdict_bounds(g.graph, g.coloring)
    assert v.z == Fraction(1, 6)
    assert v.passed["conjectured_1_5"] and v.achieved["conjectured_1_5"] == v.thresholds["conjectured_1_5"]
    assert "conjectured_1_5" in v.required


@given(st.integers(2, 12), st.integers(2, 4), st.data())
def test_verdict_on_complete_graphs(n, r, data):
    K = Graph.complete(n)
    colors = data.draw(st.lists(st.integers(1, r), min_size=K.m, max_size=K.m))
    v = verdict_bounds(K, EdgeColoring(r, np.array(colors)))
    assert v.z >= 1 / (Fraction(r * r - r) + Fraction(5, 4))
    assert v.ok
    if r == 2:
        assert v.report.max_vertices == n
        assert v.z >= Fraction(4, 13)


def test_verdict_required_sets():
    G = sample_gnp(60, 0.3, 1)
    v = verdict_bounds(G, EdgeColoring(3, np.arange(G.m) % 3 + 1))
    assert v.required == {"proven_1_6"}
    H = min_degree_graph(100, 0.1)
    v = verdict_bounds(H, induced_coloring(gyarfas_coloring(100, 4), H), beta=0.1)
    assert "mindeg_r4" in v.required and v.ok
    assert v.achieved["mindeg_r4"] == Fraction(v.report.largest.edges, 100 * 99 // 2)
    with pytest.raises(Beta3ColorOutOfRange):
        verdict_bounds(H, EdgeColoring(3, np.ones(H.m, np.int64)), beta=0.1)
    K = min_degree_graph(100, Fraction(1, 25))
    v = verdict_bounds(K, induced_coloring(gyarfas_coloring(100, 3), K), beta=Fraction(1, 25))
    assert "mindeg_3color" in v.required and v.ok


def test_verdict_json_is_exact():
    g = gyarfas_coloring(12, 3)
    out = verdict_bounds(g.graph, g.coloring).to_json()
    assert out["z"] == "1/6"
    assert out["thresholds"]["proven_1_6"]["threshold"] == "4/29"
