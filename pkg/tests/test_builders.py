import math
import random
from fractions import Fraction

import numpy as np
import pytest

from cubicity.builders import (
    BuildError,
    RetryCapExhausted,
    build_det,
    build_rand,
    derive_seed,
    dimension_bound,
    draw_permutation_and_partition,
    rand_invocation,
    survival_bound,
    survival_probability_given_pi,
)
from cubicity.graph import (
    Graph,
    GraphError,
    binary_tree,
    complete_graph,
    cycle_graph,
    empty_graph,
    gnp_graph,
    is_supergraph,
    max_degree,
    non_edges,
    path_graph,
    star_graph,
)
from cubicity.intervals import Permutation, induced_graph, verify_representation, write_representation

from oracles import adjacency, mc_survival_fixed_pi

PETERSEN = Graph(
    10,
    [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
     (6, 8), (8, 10), (10, 7), (7, 9), (9, 6)],
)


def test_rand_invocation_examples():
    k5 = complete_graph(5)
    assert induced_graph(rand_invocation(k5, 3)).is_complete()
    single = rand_invocation(empty_graph(1), 9)
    assert single.n == 1
    p4 = path_graph(4)
    assert rand_invocation(p4, 17) == rand_invocation(p4, 17)


def test_rand_draw_is_uniform_permutation():
    counts = {}
    for s in range(6000):
        pi, _ = draw_permutation_and_partition(3, derive_seed(11, s))
        key = tuple(pi.values.tolist())
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 6
    # 6000/6 = 1000 per cell; 5 sigma ~ 150
    assert all(abs(c - 1000) < 150 for c in counts.values())


def test_rand_coins_are_fair():
    total = sum(
        int(draw_permutation_and_partition(50, derive_seed(2, s))[1].in_a.sum()) for s in range(400)
    )
    assert abs(total / 20000 - 0.5) < 0.02


def test_every_invocation_is_supergraph():
    for g in (path_graph(30), cycle_graph(17), star_graph(9), gnp_graph(25, 0.2, seed=1)):
        for s in range(40):
            assert is_supergraph(induced_graph(rand_invocation(g, derive_seed(5, s))), g)


def test_survival_bound_examples():
    assert survival_bound(0) == Fraction(1, 2)
    assert survival_bound(2) == Fraction(5, 6)
    assert survival_bound(3) == Fraction(7, 8)


def test_survival_given_pi_examples():
    assert survival_probability_given_pi(empty_graph(2), Permutation([2, 1]), 1, 2) == Fraction(1, 2)
    # a=1, b=0: 1-2-3 plus isolated 4, pair (1,4) with pi(2) > pi(4)
    g = Graph(4, [(1, 2), (2, 3)])
    pi = Permutation([1, 4, 2, 3])
    assert survival_probability_given_pi(g, pi, 1, 4) == Fraction(5, 8)
    # a=b=1: edges 1-2 and 3-4, pair (1,3)
    h = Graph(4, [(1, 2), (3, 4)])
    assert survival_probability_given_pi(h, pi, 1, 3) == Fraction(3, 4)


def test_survival_given_pi_rejects_edges(p3):
    with pytest.raises(GraphError):
        survival_probability_given_pi(p3, Permutation.identity(3), 1, 2)


@pytest.mark.parametrize("seed", range(4))
def test_survival_given_pi_matches_monte_carlo(seed):
    rng = random.Random(seed)
    g = gnp_graph(9, 0.35, seed=seed)
    vals = list(range(1, 10))
    rng.shuffle(vals)
    pi = Permutation(vals)
    u, v = next(iter(non_edges(g)))
    exact = survival_probability_given_pi(g, pi, u, v)
    mc = mc_survival_fixed_pi(adjacency(g), {x: pi(x) for x in range(1, 10)}, u, v, 20000, seed)
    assert abs(float(exact) - mc) < 0.015


def test_survival_given_pi_averages_below_lemma_bound():
    g = star_graph(3)  # delta 3; leaves are pairwise non-adjacent
    g = Graph(6, list(g.edges()) + [(5, 6)])
    d = max_degree(g)
    rng = np.random.default_rng(0)
    total = Fraction(0)
    trials = 10_000
    for _ in range(trials):
        pi = Permutation(rng.permutation(6) + 1)
        total += survival_probability_given_pi(g, pi, 2, 5)
    assert float(total / trials) <= survival_bound(d) + 0.02


def test_dimension_bound_values():
    assert dimension_bound(2, 3, 6) == 20
    assert dimension_bound(3, 10, 4) == 37
    assert dimension_bound(5, 1, 4) == 0


def test_build_rand_examples():
    rep, report = build_rand(complete_graph(5))
    assert rep.k == 0 and report.verified
    rep, report = build_rand(path_graph(3), mode="whp", seed=1)
    assert report.k_bound == 20 and rep.k <= 20 and report.verified
    rep, report = build_rand(PETERSEN, mode="expected", seed=0)
    assert report.k_bound == 37 and rep.k == 37
    assert verify_representation(PETERSEN, rep).valid


def test_build_rand_retry_cap_reports_survivors():
    # with only a few retries and a graph needing many axes, force failure by
    # truncating: one RAND draw cannot represent a long path
    from cubicity import builders

    g = path_graph(40)
    orig = builders.dimension_bound
    builders.dimension_bound = lambda *a, **k: 1
    try:
        with pytest.raises(RetryCapExhausted) as exc:
            build_rand(g, retries=2, seed=5)
    finally:
        builders.dimension_bound = orig
    assert exc.value.report.seeds == [5, 6]
    assert exc.value.surviving
    assert all(not g.has_edge(u, v) for u, v in exc.value.surviving)


def test_build_rand_deterministic():
    g = gnp_graph(40, 0.1, seed=3)
    a, _ = build_rand(g, "whp", seed=7)
    b, _ = build_rand(g, "whp", seed=7)
    assert write_representation(a) == write_representation(b)


def test_build_rand_rejects_bad_mode():
    with pytest.raises(ValueError):
        build_rand(path_graph(3), mode="fast")


def test_build_det_examples():
    rep, report = build_det(complete_graph(6))
    assert rep.k == 0 and report.verified
    rep, report = build_det(path_graph(4))
    trace = report.surviving_nonedge_trace
    assert trace[0] == 3
    assert trace[0] - trace[1] >= math.ceil(3 / 6)


@pytest.mark.parametrize(
    "g",
    [path_graph(60), cycle_graph(41), star_graph(30), binary_tree(5), gnp_graph(64, 0.1, seed=2), empty_graph(7)],
    ids=repr,
)
def test_build_det_bound_and_monotone(g):
    rep, report = build_det(g)
    assert report.verified and verify_representation(g, rep).valid
    assert rep.k <= dimension_bound(max_degree(g), g.n, 4)
    assert not report.fallback
    trace = report.surviving_nonedge_trace
    assert trace[-1] == 0
    assert all(b < a for a, b in zip(trace, trace[1:]))
    # each axis met its quota
    divisor = 2 * max_degree(g) + 2
    assert all(a - b >= -(-a // divisor) for a, b in zip(trace, trace[1:]))


def test_build_det_deterministic():
    g = gnp_graph(50, 0.1, seed=9)
    assert write_representation(build_det(g)[0]) == write_representation(build_det(g)[0])


def test_build_det_host_length():
    g = path_graph(6)
    rep, report = build_det(g, length=20)
    assert all(d.length == 20 for d in rep.dims)
    assert all(0 <= x <= 2 * 20 for d in rep.dims for x in d.left.tolist())
    with pytest.raises(ValueError):
        build_det(g, length=5)


def test_build_det_fallback_flagged():
    from cubicity import _kernels, builders

    def one_at_a_time(lefts, L, ru, rv):
        out = np.zeros(ru.size, dtype=bool)
        out[:1] = True
        return out

    orig = _kernels.separated_mask
    _kernels.separated_mask = one_at_a_time
    try:
        rep, report = builders.build_det(path_graph(6), scan_cap=4)
    finally:
        _kernels.separated_mask = orig
    # 10 non-edges, quota 2 is never met while |R| > 6
    assert report.fallback
    assert report.surviving_nonedge_trace == list(range(10, -1, -1))
    assert rep.k == 10


def test_build_det_stall_raises():
    from cubicity import _kernels, builders

    orig = _kernels.separated_mask
    _kernels.separated_mask = lambda lefts, L, ru, rv: np.zeros(ru.size, dtype=bool)
    try:
        with pytest.raises(BuildError):
            builders.build_det(path_graph(5), scan_cap=3)
    finally:
        _kernels.separated_mask = orig
