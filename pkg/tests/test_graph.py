import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from domstruct.graph import (
    Graph,
    GraphFormatError,
    closed_neighborhood,
    generate_named,
    generate_random_3connected,
    is_3_connected,
    load_graph,
    load_graph6_lines,
    parse_graph6,
    save_edgelist,
)
from oracles import connected_after_removal, girth


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


K4_TEXT = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


def test_load_k4():
    g = load_graph(K4_TEXT)
    assert (g.n, g.m) == (4, 6)
    assert g.adjacency == ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))


def test_single_vertex_no_edges():
    g = load_graph("1 0\n")
    assert (g.n, g.m) == (1, 0)


def test_isolated_vertices_declared_in_header():
    g = load_graph("5 1\n0 1\n")
    assert g.n == 5 and g.adjacency[4] == ()


@pytest.mark.parametrize(
    "text, lineno, fragment",
    [
        ("3 1\n2 2\n", 2, "self-loop"),
        ("3 2\n0 1\n1 0\n", 3, "duplicate"),
        ("3 1\n0 7\n", 2, "out of range"),
        ("3 1\n0 x\n", 2, "integers"),
        ("3\n", 1, "header"),
        ("3 1\n0 1 2\n", 2, "two vertex ids"),
    ],
)
def test_edgelist_errors_carry_line_numbers(text, lineno, fragment):
    with pytest.raises(GraphFormatError) as info:
        load_graph(text, "edgelist")
    assert info.value.line == lineno
    assert fragment in str(info.value)


def test_edge_count_mismatch():
    with pytest.raises(GraphFormatError, match="declares 3 edges"):
        load_graph("3 3\n0 1\n")


def test_pairs_format_renumbers_and_rejects_loops():
    g = load_graph("10 20\n20 30\n30 10\n", "pairs")
    assert (g.n, g.edges) == (3, ((0, 1), (0, 2), (1, 2)))
    with pytest.raises(GraphFormatError, match="self-loop"):
        load_graph("2 2\n", "pairs")


def test_graph_constructor_rejects_non_simple():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


@given(graphs(max_n=12))
def test_edgelist_round_trip(g):
    assert load_graph(save_edgelist(g)) == g


@given(graphs(min_n=1, max_n=20))
def test_graph6_matches_networkx_encoder(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    text = nx.to_graph6_bytes(G, header=False).decode().strip()
    assert parse_graph6(text) == g
    assert load_graph(text) == g


def test_graph6_known_strings():
    assert parse_graph6("C~") == generate_named("K4")
    assert len(load_graph6_lines("C~\nA_\n")) == 2
    pet = nx.petersen_graph()
    assert nx.is_isomorphic(pet, nx.Graph(list(load_graph(nx.to_graph6_bytes(pet, header=False).decode()).edges)))


def test_graph6_large_size_field():
    G = nx.path_graph(70)
    g = parse_graph6(nx.to_graph6_bytes(G, header=False).decode())
    assert (g.n, g.m) == (70, 69)


def test_graph6_bad_length():
    with pytest.raises(GraphFormatError):
        parse_graph6("C~~")


def test_closed_neighborhood_examples():
    assert closed_neighborhood(generate_named("K4"), [0]) == (0, 1, 2, 3)
    assert closed_neighborhood(cycle_graph(6), []) == ()
    assert closed_neighborhood(cycle_graph(6), [0]) == (0, 1, 5)


@given(graphs(max_n=10), st.data())
def test_closed_neighborhood_monotone(g, data):
    small = data.draw(st.sets(st.integers(0, g.n - 1)))
    big = small | data.draw(st.sets(st.integers(0, g.n - 1)))
    assert set(small) <= set(closed_neighborhood(g, small)) <= set(closed_neighborhood(g, big))


def test_is_3_connected_examples():
    assert is_3_connected(generate_named("K4"))
    assert not is_3_connected(cycle_graph(5))
    assert is_3_connected(generate_named("petersen"))


def test_petersen_by_exhaustive_pair_removal():
    g = generate_named("petersen")
    assert all(
        connected_after_removal(g.n, g.edges, {a, b}) for a in range(g.n) for b in range(a + 1, g.n)
    )


@given(graphs(min_n=1, max_n=9))
def test_is_3_connected_matches_networkx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    expected = g.n >= 4 and nx.node_connectivity(G) >= 3
    assert is_3_connected(g) == expected
    if is_3_connected(g):
        assert g.min_degree() >= 3


@pytest.mark.parametrize(
    "name, n, m",
    [("K4", 4, 6), ("K5", 5, 10), ("prism3", 6, 9), ("wheel(5)", 6, 10),
     ("petersen", 10, 15), ("cube_q3", 8, 12), ("moebius_kantor", 16, 24)],
)
def test_named_graphs(name, n, m):
    g = generate_named(name)
    assert (g.n, g.m) == (n, m)
    assert is_3_connected(g)


def test_named_graph_shapes():
    prism = generate_named("prism3")
    assert {prism.degree(v) for v in prism.vertices()} == {3}
    pet = generate_named("petersen")
    assert girth(pet.n, pet.edges) == 5
    mk = generate_named("moebius_kantor")
    assert girth(mk.n, mk.edges) == 6
    assert nx.is_isomorphic(nx.Graph(list(mk.edges)), nx.LCF_graph(16, [5, -5], 8))


def test_named_errors():
    with pytest.raises(ValueError):
        generate_named("wheel(2)")
    with pytest.raises(ValueError):
        generate_named("dodecahedron")


def test_random_generator_deterministic():
    a = generate_random_3connected(8, 1)
    b = generate_random_3connected(8, 1)
    assert a.edges == b.edges and is_3_connected(a)


def test_random_generator_rejects_small_n():
    with pytest.raises(ValueError):
        generate_random_3connected(3, 5)


def test_random_generator_n12_seed7():
    g = generate_random_3connected(12, 7)
    assert g.n == 12 and is_3_connected(g)


@given(st.integers(4, 14), st.integers(0, 2**64 - 1))
def test_random_generator_only_emits_3_connected(n, seed):
    g = generate_random_3connected(n, seed)
    assert g.n == n and is_3_connected(g)
    assert connected_after_removal(g.n, g.edges, set(random.Random(seed).sample(range(n), 2)))


def test_random_generator_exhaustion_is_explicit(monkeypatch):
    import domstruct.graph as graph_mod

    monkeypatch.setattr(graph_mod, "is_3_connected", lambda g: False)
    with pytest.raises(RuntimeError, match="no 3-connected graph"):
        graph_mod.generate_random_3connected(6, 0, attempts=3)
