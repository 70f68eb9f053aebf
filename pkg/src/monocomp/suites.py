"""Seeded fuzz campaigns run by ``verify --suite``.

Each campaign draws every case from its own ``(seed, stream)`` pair so that a
single failing case can be replayed in isolation, and aggregates outcomes per
check family.  Reports contain no timings, so identical seeds give
byte-identical JSON.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .adversary import SearchParams, anneal, save_counterexample
from .constructions import gyarfas_coloring, gyarfas_supported, induced_coloring
from .errors import PreconditionViolated
from .graph_core import EdgeColoring, Graph, PartStructure, crossing_mask
from .random_models import min_degree_graph, sample_gnp
from .rng import SplitMix64
from .util import as_fraction
from .verifiers import (
    CheckOutcome,
    CliqueOn,
    _num_json,
    check_component_density,
    check_degree_bound,
    check_density_control,
    check_pair_inequality,
    check_sparse_component_density,
    check_sparse_pair_inequality,
    verdict_bounds,
)

SUITES = ("deterministic", "sparse", "bounds")

# stream ids are family * FAMILY_STRIDE + case index
FAMILY_STRIDE = 1 << 32


@dataclass
class FamilyStats:
    """Running totals for one check family."""

    check: str
    params: dict = field(default_factory=dict)
    cases: int = 0
    failures: int = 0
    vacuous: int = 0
    skipped: int = 0
    min_margin: Fraction | int | None = None
    first_failure: dict | None = None

    def add(self, outcome: CheckOutcome, case: dict) -> None:
        self.cases += 1
        if outcome.vacuous:
            self.vacuous += 1
        elif self.min_margin is None or outcome.margin < self.min_margin:
            self.min_margin = outcome.margin
        if not outcome.holds:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = {**case, **outcome.to_json()}

    def add_verdict(self, holds: bool, margin, case: dict) -> None:
        self.cases += 1
        if self.min_margin is None or margin < self.min_margin:
            self.min_margin = margin
        if not holds:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = case

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": {k: _num_json(v) for k, v in self.params.items()},
            "cases": self.cases,
            "failures": self.failures,
            "vacuous": self.vacuous,
            "skipped": self.skipped,
            "min_margin": None if self.min_margin is None else str(self.min_margin),
            "pass": self.passed,
            "first_failure": self.first_failure,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    families: list[FamilyStats]

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.families)

    def first_failure(self) -> dict | None:
        for f in self.families:
            if f.first_failure is not None:
                return {"check": f.check, **f.first_failure}
        return None

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "outcomes": [f.to_json() for f in self.families],
            "pass": self.passed,
        }


def _case_rng(seed: int, family: int, case: int) -> SplitMix64:
    return SplitMix64(seed, family * FAMILY_STRIDE + case)


def _random_labels(rng: SplitMix64, n: int, k_max: int) -> np.ndarray:
    k = 2 + rng.randbelow(min(k_max, n) - 1)
    labels = rng.randbelow_array(n, k)
    # plant one vertex per block so none is empty
    labels[np.argsort(rng.random_array(n), kind="stable")[:k]] = np.arange(k)
    return labels


def _random_mask(rng: SplitMix64, n: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    density = lo + (hi - lo) * rng.random()
    return rng.random_array(n) < density


# -- deterministic -----------------------------------------------------------------


def deterministic_suite(seed: int, pair_cases: int = 10**5, density_cases: int = 10**4, n_max: int = 60) -> SuiteReport:
    """Exact multipartite inequalities on small random instances."""
    pair = FamilyStats("pair_inequality", {"cases": pair_cases, "n_max": n_max})
    for i in range(pair_cases):
        rng = _case_rng(seed, 0, i)
        n = 2 + rng.randbelow(n_max - 1)
        P = PartStructure.from_labels(_random_labels(rng, n, 12))
        S = _random_mask(rng, n)
        mode = rng.randbelow(8)
        T = S if mode == 0 else (~S if mode == 1 else _random_mask(rng, n))
        pair.add(check_pair_inequality(P, S, T), {"seed": seed, "stream": i, "n": n})

    dens = FamilyStats("component_density", {"cases": density_cases, "n_max": n_max})
    for i in range(density_cases):
        rng = _case_rng(seed, 1, i)
        n = 2 + rng.randbelow(n_max - 1)
        labels = _random_labels(rng, n, 12)
        P = PartStructure.from_labels(labels)
        u, v = np.triu_indices(n, 1)
        cross = labels[u] != labels[v]
        u, v = u[cross], v[cross]
        # sparse keeps produce many small components, dense ones a giant one
        keep = rng.random()
        keep = keep * keep
        chosen = rng.random_array(len(u)) < keep
        H = Graph(n, u[chosen], v[chosen])
        dens.add(check_component_density(P, H), {"seed": seed, "stream": i, "n": n})
    return SuiteReport("deterministic", seed, [pair, dens])


# -- sparse random -----------------------------------------------------------------


@dataclass(frozen=True)
class SparseParams:
    n: int = 500
    p: Fraction = Fraction(3, 10)
    instances: int = 100
    density_eps: Fraction = Fraction(1, 5)
    density_floor: Fraction = Fraction(1, 5)
    degree_eps: Fraction = Fraction(3, 10)
    degree_c0: Fraction = Fraction(1, 5)
    pair_eps: Fraction = Fraction(1, 2)
    pair_c: Fraction = Fraction(1, 20)
    comp_eps: Fraction = Fraction(1, 2)
    comp_c1: Fraction = Fraction(1, 5)
    comp_c2: Fraction = Fraction(1, 5)
    max_tries: int = 50


def _clique_spec(rng: SplitMix64, n: int, floor: Fraction) -> CliqueOn:
    pairs = n * (n - 1) // 2
    s_min = 2
    while s_min * (s_min - 1) // 2 < floor * pairs:
        s_min += 1
    s = s_min + rng.randbelow(n - s_min + 1)
    perm = np.argsort(rng.random_array(n), kind="stable")
    return CliqueOn(perm[:s].tolist())


def _balanced_parts(rng: SplitMix64, n: int, k: int) -> PartStructure:
    perm = np.argsort(rng.random_array(n), kind="stable")
    labels = np.empty(n, dtype=np.int64)
    labels[perm] = np.arange(n) % k
    return PartStructure.from_labels(labels)


def _retry(fn, tries: int):
    """Call ``fn(attempt)`` until its precondition holds; returns (outcome, skipped attempts)."""
    for attempt in range(tries):
        try:
            return fn(attempt), attempt
        except PreconditionViolated:
            continue
    return None, tries


def sparse_suite(seed: int, params: SparseParams = SparseParams()) -> SuiteReport:
    """Statistical checks on one G(n, p) sample, with fuzzed H, S, T and part structures."""
    n, p = params.n, params.p
    G = sample_gnp(n, float(p), seed)
    base = {"seed": seed, "n": n, "p": p}

    dc = FamilyStats("density_control", {**base, "eps": params.density_eps, "density": params.density_floor})
    for i in range(params.instances):
        rng = _case_rng(seed, 0, i)

        def run(attempt, rng=rng):
            if rng.randbelow(2) == 0:
                H = _clique_spec(rng, n, params.density_floor)
            elif rng.randbelow(2) == 0:
                H = _balanced_parts(rng, n, 2 + rng.randbelow(9))
            else:
                H = PartStructure.from_labels(_random_labels(rng, n, 10))
            return check_density_control(G, H, p, params.density_eps, params.density_floor)

        out, skipped = _retry(run, params.max_tries)
        dc.skipped += skipped
        if out is not None:
            dc.add(out, {"seed": seed, "stream": i})

    db = FamilyStats("degree_bound", {**base, "eps": params.degree_eps, "c0": params.degree_c0})
    adj = G.adjacency
    for i in range(params.instances):
        rng = _case_rng(seed, 1, i)
        mode = rng.randbelow(3)
        if mode == 0:
            S = _random_mask(rng, n, 0.01, 1.0)
        elif mode == 1:
            # a neighbourhood is locally denser than a uniform subset of the same size
            S = np.zeros(n, dtype=bool)
            S[adj[rng.randbelow(n)]] = True
        else:
            # the highest-degree vertices
            k = 1 + rng.randbelow(n)
            S = np.zeros(n, dtype=bool)
            S[np.argsort(-G.degrees, kind="stable")[:k]] = True
        if not S.any():
            S[rng.randbelow(n)] = True
        db.add(check_degree_bound(G, S, p, params.degree_eps, params.degree_c0), {"seed": seed, "stream": i, "mode": mode})

    sp = FamilyStats("sparse_pair_inequality", {**base, "eps": params.pair_eps, "c": params.pair_c})
    for i in range(params.instances):
        rng = _case_rng(seed, 2, i)

        def run(attempt, rng=rng):
            P = PartStructure.from_labels(_random_labels(rng, n, 10))
            S = _random_mask(rng, n, 0.2, 1.0)
            T = S if rng.randbelow(4) == 0 else _random_mask(rng, n, 0.2, 1.0)
            return check_sparse_pair_inequality(G, P, S, T, p, params.pair_eps, params.pair_c)

        out, skipped = _retry(run, params.max_tries)
        sp.skipped += skipped
        if out is not None:
            sp.add(out, {"seed": seed, "stream": i})

    cd = FamilyStats("sparse_component_density", {**base, "eps": params.comp_eps, "c1": params.comp_c1, "c2": params.comp_c2})
    for i in range(params.instances):
        rng = _case_rng(seed, 3, i)

        def run(attempt, rng=rng):
            P = _balanced_parts(rng, n, 2 + rng.randbelow(9))
            mask = crossing_mask(G, P)
            Gp = G.subgraph_mask(mask)
            r = 3 + rng.randbelow(2)
            if rng.randbelow(2) == 0:
                colors = induced_coloring(gyarfas_coloring(n, r), Gp).colors
            else:
                colors = rng.randbelow_array(Gp.m, r) + 1
            keep = colors == 1 + rng.randbelow(r)
            H = Graph(n, Gp.u[keep], Gp.v[keep])
            return check_sparse_component_density(G, P, H, params.comp_eps, params.comp_c1, params.comp_c2)

        out, skipped = _retry(run, params.max_tries)
        cd.skipped += skipped
        if out is not None:
            cd.add(out, {"seed": seed, "stream": i})

    return SuiteReport("sparse", seed, [dc, db, sp, cd])


# -- headline bounds ---------------------------------------------------------------


@dataclass(frozen=True)
class BoundsParams:
    exhaustive_n: int = 5
    fuzz_n: int = 12
    fuzz_cases: int = 10**5
    fuzz_rs: tuple[int, ...] = (2, 3, 4)
    kn_anneals: int = 2
    mindeg_n: int = 300
    mindeg_cases: int = 10**3
    mindeg_anneals: int = 10
    anneal_iterations: int = 2000
    hosts: tuple[tuple[str, int], ...] = (("1/25", 3), ("1/10", 4))


def _structured(rng: SplitMix64, G: Graph, r: int) -> np.ndarray:
    """Colour by a random symmetric table over a random vertex partition (blow-up colourings)."""
    k = 2 + rng.randbelow(min(G.n, 10) - 1)
    labels = rng.randbelow_array(G.n, k)
    table = rng.randbelow_array(k * k, r).reshape(k, k) + 1
    table = np.triu(table) + np.triu(table, 1).T
    return table[labels[G.u], labels[G.v]]


def _fuzz_colors(rng: SplitMix64, G: Graph, r: int, base: np.ndarray | None) -> tuple[str, np.ndarray]:
    mode = rng.randbelow(3 if base is not None else 2)
    if mode == 0:
        return "random", rng.randbelow_array(G.m, r) + 1
    if mode == 1:
        return "structured", _structured(rng, G, r)
    colors = base.copy()
    flips = rng.random_array(G.m) < 0.2 * rng.random()
    colors[flips] = rng.randbelow_array(int(flips.sum()), r) + 1
    return "perturbed_gyarfas", colors


def _verdict_margin(v) -> Fraction:
    return min((v.achieved[t] - v.thresholds[t] for t in v.required), default=Fraction(0))


class _BoundRecorder:
    def __init__(self, stats: FamilyStats, G: Graph, r: int, beta, save_dir: Path | None):
        self.stats, self.G, self.r, self.beta, self.save_dir = stats, G, r, beta, save_dir

    def __call__(self, colors: np.ndarray, case: dict) -> None:
        C = EdgeColoring(self.r, colors)
        v = verdict_bounds(self.G, C, beta=self.beta)
        case = {**case, "z": str(v.z)}
        if not v.ok:
            case["failed_thresholds"] = v.failures()
            if self.save_dir is not None and self.stats.first_failure is None:
                name = f"{self.stats.check}_{case.get('stream', 'x')}.txt"
                case["reproduction"] = str(save_counterexample(self.save_dir / name, self.G, C))
        self.stats.add_verdict(v.ok, _verdict_margin(v), case)


def bounds_suite(seed: int, params: BoundsParams = BoundsParams(), save_dir: str | Path | None = None) -> SuiteReport:
    """Every required threshold on exhaustive, fuzzed and annealed colorings of complete and minimum-degree hosts."""
    save = Path(save_dir) if save_dir is not None else None
    families = []

    K = Graph.complete(params.exhaustive_n)
    ex = FamilyStats("bounds_exhaustive", {"n": params.exhaustive_n, "r": 2})
    rec = _BoundRecorder(ex, K, 2, None, save)
    for tail in itertools.product((1, 2), repeat=K.m - 1):
        rec(np.array((1,) + tail, dtype=np.int64), {"coloring": "".join(map(str, (1,) + tail))})
    families.append(ex)

    K = Graph.complete(params.fuzz_n)
    for fam, r in enumerate(params.fuzz_rs):
        st = FamilyStats(f"bounds_kn_r{r}", {"n": params.fuzz_n, "r": r, "cases": params.fuzz_cases})
        rec = _BoundRecorder(st, K, r, None, save)
        base = induced_coloring(gyarfas_coloring(K.n, r), K).colors if gyarfas_supported(K.n, r) else None
        for i in range(params.fuzz_cases):
            rng = _case_rng(seed, fam, i)
            mode, colors = _fuzz_colors(rng, K, r, base)
            rec(colors, {"seed": seed, "stream": fam * FAMILY_STRIDE + i, "mode": mode})
        for j in range(params.kn_anneals):
            init = "gyarfas" if base is not None and j % 2 else "random"
            res = anneal(K, r, SearchParams(params.anneal_iterations, seed=seed + j, init=init))
            rec(np.asarray(res.coloring.colors), {"seed": seed + j, "mode": f"annealed_{init}"})
        families.append(st)

    for h, (beta_s, r) in enumerate(params.hosts):
        beta = as_fraction(beta_s)
        G = min_degree_graph(params.mindeg_n, beta)
        st = FamilyStats(
            f"bounds_mindeg_r{r}",
            {"n": params.mindeg_n, "beta": beta, "r": r, "edges": G.m, "cases": params.mindeg_cases},
        )
        rec = _BoundRecorder(st, G, r, beta, save)
        base = induced_coloring(gyarfas_coloring(G.n, r), G).colors if gyarfas_supported(G.n, r) else None
        fam = 16 + h
        for i in range(params.mindeg_cases):
            rng = _case_rng(seed, fam, i)
            mode, colors = _fuzz_colors(rng, G, r, base)
            rec(colors, {"seed": seed, "stream": fam * FAMILY_STRIDE + i, "mode": mode})
        for j in range(params.mindeg_anneals):
            init = "gyarfas" if base is not None and j % 2 else "random"
            res = anneal(G, r, SearchParams(params.anneal_iterations, seed=seed + j, init=init))
            rec(np.asarray(res.coloring.colors), {"seed": seed + j, "mode": f"annealed_{init}"})
        families.append(st)

    return SuiteReport("bounds", seed, families)


def run_suite(name: str, seed: int, save_dir: str | Path | None = None) -> SuiteReport:
    if name == "deterministic":
        return deterministic_suite(seed)
    if name == "sparse":
        return sparse_suite(seed)
    if name == "bounds":
        return bounds_suite(seed, save_dir=save_dir)
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
