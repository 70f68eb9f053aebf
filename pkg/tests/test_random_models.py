import hashlib
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from monocomp.graph_core import Graph
from monocomp.random_models import (
    SKIP_THRESHOLD,
    ChernoffQuery,
    chernoff_lower,
    chernoff_tails,
    chernoff_two_sided,
    chernoff_upper,
    min_degree_graph,
    random_part_structure,
    random_subset,
    sample_gnp,
    sample_gnp_naive,
    sample_gnp_skip,
)


def _digest(G):
    return hashlib.sha256(G.u.tobytes() + G.v.tobytes()).hexdigest()[:16]


def _window(n, p, sigmas=4):
    pairs = n * (n - 1) // 2
    return pairs * p, sigmas * math.sqrt(pairs * p * (1 - p))


def test_degenerate_probabilities():
    assert sample_gnp(10, 0, 1).m == 0
    assert sample_gnp(10, 1, 1) == Graph.complete(10)
    with pytest.raises(ValueError):
        sample_gnp(10, 1.5, 1)
    with pytest.raises(ValueError):
        sample_gnp(0, 0.5, 1)


def test_edge_count_window():
    mean, width = _window(1000, 0.1)
    assert abs(sample_gnp(1000, 0.1, 7).m - mean) <= width


def test_golden_samples():
    # fixed outputs guard reproducibility of both samplers
    assert (sample_gnp(200, 0.05, 42).m, _digest(sample_gnp(200, 0.05, 42))) == (996, "283dc3cf9c462aa4")
    assert (sample_gnp(200, 0.3, 42).m, _digest(sample_gnp(200, 0.3, 42))) == (6018, "1bdf0cfb7bc383c1")


@pytest.mark.parametrize("p", [0.01, 0.05, 0.09, 0.2, 0.5])
def test_same_seed_same_graph(p):
    assert sample_gnp(150, p, 11) == sample_gnp(150, p, 11)
    assert sample_gnp(150, p, 11) != sample_gnp(150, p, 12)


def test_dispatch_by_threshold():
    assert sample_gnp(100, SKIP_THRESHOLD / 2, 3) == sample_gnp_skip(100, SKIP_THRESHOLD / 2, 3)
    assert sample_gnp(100, 0.3, 3) == sample_gnp_naive(100, 0.3, 3)


@pytest.mark.parametrize("p", [0.02, 0.05, 0.09, 0.15, 0.3])
def test_samplers_agree_in_distribution(p):
    n, trials = 30, 600
    pairs = n * (n - 1) // 2
    freq = {}
    for name, fn in (("skip", sample_gnp_skip), ("naive", sample_gnp_naive)):
        hits = np.zeros(pairs)
        counts = []
        for s in range(trials):
            G = fn(n, p, s)
            idx = G.u * (2 * n - G.u - 1) // 2 + G.v - G.u - 1
            hits[idx] += 1
            counts.append(G.m)
        mean, width = _window(n, p, sigmas=1)
        # the average of `trials` binomial counts lies within 4 standard errors
        assert abs(np.mean(counts) - mean) <= 4 * width / math.sqrt(trials)
        freq[name] = hits / trials
    sd = math.sqrt(p * (1 - p) / trials)
    for f in freq.values():
        assert np.all(np.abs(f - p) <= 5.5 * sd)
    assert abs(freq["skip"].mean() - freq["naive"].mean()) <= 4 * sd / math.sqrt(pairs) * math.sqrt(2)


def test_skip_sampler_edges_are_canonical():
    G = sample_gnp_skip(500, 0.01, 5)
    assert np.all(G.u < G.v)
    mean, width = _window(500, 0.01)
    assert abs(G.m - mean) <= width


def test_min_degree_examples():
    assert min_degree_graph(10, 0) == Graph.complete(10)
    assert min_degree_graph(10, 0.2).degrees.min() >= 7
    assert min_degree_graph(300, Fraction(1, 25)).degrees.min() >= 287
    with pytest.raises(ValueError):
        min_degree_graph(10, 1)


@given(st.integers(2, 120), st.fractions(0, Fraction(99, 100)))
def test_min_degree_bound(n, beta):
    G = min_degree_graph(n, beta)
    b = math.floor(beta * n)
    degs = set(G.degrees.tolist())
    assert min(degs) >= (1 - beta) * n - 1
    assert len(degs) == 1
    assert degs.pop() == (n - b if n % 2 and b % 2 else n - 1 - b)


def test_subsets_and_parts():
    assert random_subset(20, 1.0, 1).tolist() == list(range(20))
    assert random_subset(20, 0.0, 1).tolist() == []
    assert random_part_structure(30, 2, 4).k == 2


@given(st.integers(2, 60), st.integers(0, 10**6), st.data())
def test_random_part_structure_valid(n, seed, data):
    k_max = data.draw(st.integers(2, n))
    P = random_part_structure(n, k_max, seed)
    assert 2 <= P.k <= k_max
    assert P.n == n and P.sizes.min() >= 1


def test_chernoff_examples():
    assert chernoff_upper(3, 1) == pytest.approx(math.exp(-1))
    assert (chernoff_upper(0, 0.5), chernoff_lower(0, 0.5), chernoff_two_sided(0, 0.5)) == (1, 1, 2)
    assert chernoff_two_sided(300, 0.5) == pytest.approx(2 * math.exp(-25))
    with pytest.raises(ValueError):
        chernoff_lower(10, 1)
    with pytest.raises(ValueError):
        ChernoffQuery(-1, 0.5)
    t = chernoff_tails(ChernoffQuery(10, 2))
    assert t.lower is None and t.two_sided is None and t.upper == pytest.approx(math.exp(-10))


def test_empirical_two_sided_frequency():
    n, p, delta = 100, 0.3, 0.2
    mu = p * n * (n - 1) / 2
    far = sum(abs(sample_gnp(n, p, s).m - mu) >= delta * mu for s in range(1000))
    assert far / 1000 <= chernoff_two_sided(mu, delta)


@given(st.floats(1, 1000), st.floats(0.01, 0.99))
def test_bounds_ordered(mu, delta):
    assert chernoff_two_sided(mu, delta) >= chernoff_lower(mu, delta)
    assert 0 < chernoff_upper(mu, delta) <= 1
