import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicity.graph import (
    Graph,
    GraphError,
    GraphFormatError,
    binary_tree,
    complete_graph,
    cycle_graph,
    empty_graph,
    gnp_graph,
    intersect,
    is_supergraph,
    max_degree,
    non_edges,
    path_graph,
    read_graph,
    star_graph,
    write_graph,
)

from conftest import graphs
from oracles import edge_set


def test_max_degree_examples():
    assert max_degree(empty_graph(4)) == 0
    assert max_degree(cycle_graph(5)) == 2
    assert max_degree(star_graph(6)) == 6


def test_graph_invariants():
    g = gnp_graph(30, 0.2, seed=3)
    assert 2 * g.m == g.degrees.sum()
    for u, v in g.edges():
        assert g.has_edge(v, u)
        assert u in g.neighbors(v) and v in g.neighbors(u)
    assert not any(g.has_edge(u, u) for u in range(1, 31))


@pytest.mark.parametrize(
    "edges, msg",
    [([(1, 1)], "self-loop"), ([(1, 2), (2, 1)], "duplicate"), ([(1, 4)], "outside")],
)
def test_graph_rejects_bad_edges(edges, msg):
    with pytest.raises(GraphError, match=msg):
        Graph(3, edges)


def test_intersect_examples(p3):
    g = gnp_graph(12, 0.4, seed=1)
    assert intersect(g, g) == g
    assert intersect(g, complete_graph(12)) == g
    other = Graph(3, [(2, 3), (1, 3)])
    assert edge_set(intersect(p3, other)) == {(2, 3)}


def test_intersect_size_mismatch():
    with pytest.raises(GraphError):
        intersect(path_graph(3), path_graph(4))
    with pytest.raises(GraphError):
        is_supergraph(path_graph(3), path_graph(4))


def test_is_supergraph_examples(p3):
    g = gnp_graph(10, 0.3, seed=2)
    assert is_supergraph(complete_graph(10), g)
    assert is_supergraph(g, g)
    assert not is_supergraph(p3, complete_graph(3))


def test_non_edges_examples():
    assert len(non_edges(complete_graph(4))) == 0
    assert non_edges(empty_graph(3)).to_set() == {(1, 2), (1, 3), (2, 3)}
    ne = non_edges(path_graph(4))
    assert ne.to_set() == {(1, 3), (1, 4), (2, 4)}
    assert (3, 1) in ne and (1, 2) not in ne


@given(graphs(), graphs())
def test_intersection_properties(g1, g2):
    if g1.n != g2.n:
        g2 = Graph(g1.n, [e for e in g2.edges() if max(e) <= g1.n])
    assert is_supergraph(g1, intersect(g1, g2))
    assert intersect(g1, g2) == intersect(g2, g1)
    assert edge_set(intersect(g1, g2)) == edge_set(g1) & edge_set(g2)


@given(graphs(), graphs(), graphs())
def test_intersect_associative(a, b, c):
    n = min(a.n, b.n, c.n)
    a, b, c = (Graph(n, [e for e in x.edges() if max(e) <= n]) for x in (a, b, c))
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))


@given(graphs())
def test_non_edges_partition_pairs(g):
    ne = non_edges(g).to_set()
    es = edge_set(g)
    allp = {(u, v) for u in range(1, g.n + 1) for v in range(u + 1, g.n + 1)}
    assert ne | es == allp and not ne & es
    assert len(ne) == g.n * (g.n - 1) // 2 - g.m


def test_read_graph_examples(p3):
    assert read_graph("3 2\n1 2\n2 3\n") == p3
    g = read_graph("1 0\n")
    assert g.n == 1 and g.m == 0
    assert read_graph("# comment\n\n3 2\n2 1\n3 2\n") == p3


def test_round_trip_random_graph():
    import random

    rng = random.Random(5)
    pairs = [(u, v) for u in range(1, 9) for v in range(u + 1, 9)]
    chosen = rng.sample(pairs, 10)
    text = "8 10\n" + "".join(f"{v} {u}\n" for u, v in chosen)
    canon = "8 10\n" + "".join(f"{u} {v}\n" for u, v in sorted(chosen))
    assert write_graph(read_graph(text)) == canon


@given(graphs(min_n=0))
def test_write_read_identity(g):
    assert read_graph(write_graph(g)) == g


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("3\n1 2\n", 1),
        ("3 1\n1 4\n", 2),
        ("3 2\n1 2\n2 1\n", 3),
        ("3 1\n2 2\n", 2),
        ("3 2\n1 2\n", 1),
        ("# c\n3 1\n1 x\n", 3),
    ],
)
def test_read_graph_errors_report_line(text, lineno):
    with pytest.raises(GraphFormatError) as exc:
        read_graph(text)
    assert exc.value.lineno == lineno


def test_generators():
    t = binary_tree(3)
    assert (t.n, t.m) == (15, 14)
    assert path_graph(5).m == 4
    assert gnp_graph(50, 0.1, seed=1) == gnp_graph(50, 0.1, seed=1)
    assert star_graph(6).n == 7
    assert complete_graph(5).is_complete()


@settings(max_examples=30)
@given(graphs(min_n=2), st.data())
def test_induced_subgraph(g, data):
    vs = data.draw(st.lists(st.integers(1, g.n), unique=True, min_size=1))
    h = g.induced_subgraph(vs)
    expect = {
        tuple(sorted((i + 1, j + 1)))
        for i, a in enumerate(vs)
        for j, b in enumerate(vs)
        if i < j and g.has_edge(a, b)
    }
    assert edge_set(h) == expect
