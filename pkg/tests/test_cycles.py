import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from domstruct.cycles import Cycle, CycleBudget, c_g, enumerate_cycles
from domstruct.graph import Graph, generate_named, generate_random_3connected
from oracles import cycles_by_subsets, nx_cycles, triangle_count


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_k4_has_seven_cycles():
    g = generate_named("K4")
    cycles, truncated = enumerate_cycles(g, CycleBudget(max_length=4))
    assert not truncated
    assert [c.vertices for c in cycles] == cycles_by_subsets(4, g.edges)
    assert len(cycles) == 7
    assert sorted(c.length for c in cycles) == [3, 3, 3, 3, 4, 4, 4]


def test_tree_has_no_cycles():
    tree = Graph.from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
    assert enumerate_cycles(tree) == ([], False)


def test_cycle_graph_has_one_cycle():
    cycles, _ = enumerate_cycles(cycle_graph(6))
    assert [c.vertices for c in cycles] == [(0, 1, 2, 3, 4, 5)]


def test_c_g_examples():
    tri, _ = c_g(generate_named("K4"))
    assert [c.vertices for c in tri] == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert c_g(cycle_graph(5)) == ([], False)


# counts fixed beforehand with networkx.simple_cycles
@pytest.mark.parametrize(
    "name, total, zero_mod_3",
    [("K4", 7, 4), ("K5", 37, 10), ("prism3", 14, 5), ("wheel(5)", 21, 10),
     ("petersen", 57, 30), ("cube_q3", 28, 16), ("moebius_kantor", 400, 124)],
)
def test_named_cycle_counts(name, total, zero_mod_3):
    g = generate_named(name)
    assert len(enumerate_cycles(g)[0]) == total
    cg, truncated = c_g(g)
    assert len(cg) == zero_mod_3 and not truncated


def test_petersen_zero_mod_3_lengths():
    cg, _ = c_g(generate_named("petersen"))
    assert sorted({c.length for c in cg}) == [6, 9]
    assert sum(c.length == 6 for c in cg) == 10


@given(graphs(max_n=8))
def test_matches_networkx_enumeration(g):
    cycles, truncated = enumerate_cycles(g)
    assert not truncated
    assert [c.vertices for c in cycles] == nx_cycles(g.n, g.edges)


@given(graphs(max_n=7), st.integers(3, 7))
def test_length_cap_matches_subset_oracle(g, cap):
    cycles, _ = enumerate_cycles(g, CycleBudget(max_length=cap))
    assert [c.vertices for c in cycles] == cycles_by_subsets(g.n, g.edges, max_len=min(cap, g.n))


@given(graphs(max_n=9))
def test_cycles_valid_canonical_and_sorted(g):
    cycles, _ = enumerate_cycles(g)
    assert cycles == sorted(cycles)
    for c in cycles:
        assert c.is_valid_in(g)
        assert c.vertices[0] == min(c.vertices)
        assert c.vertices[1] < c.vertices[-1]
    tri = sum(c.length == 3 for c in cycles)
    assert tri == triangle_count(g.n, g.edges)


def test_canonical_form():
    assert Cycle.of([3, 1, 2]).vertices == (1, 2, 3)
    assert Cycle.of([2, 5, 4, 0]).vertices == (0, 2, 5, 4)
    assert Cycle.of([0, 4, 5, 2]) == Cycle.of([2, 5, 4, 0])
    with pytest.raises(ValueError):
        Cycle((0, 2, 1))
    with pytest.raises(ValueError):
        Cycle.of([0, 1])


def test_count_cap_sets_truncated_honestly():
    g = generate_named("K5")
    full, truncated = enumerate_cycles(g)
    assert not truncated
    capped, truncated = enumerate_cycles(g, CycleBudget(max_count=5))
    assert truncated and len(capped) == 5
    exact, truncated = enumerate_cycles(g, CycleBudget(max_count=len(full)))
    assert not truncated and exact == full


def test_length_cap_sets_truncated_only_when_it_fires():
    g = generate_named("K5")
    _, truncated = enumerate_cycles(g, CycleBudget(max_length=4))
    assert truncated
    _, truncated = enumerate_cycles(cycle_graph(6), CycleBudget(max_length=6))
    assert not truncated


def test_budget_validation():
    with pytest.raises(ValueError):
        CycleBudget(max_length=2)
    with pytest.raises(ValueError):
        CycleBudget(max_count=0)


def test_three_connected_graphs_have_zero_mod_3_cycles():
    for seed in range(20):
        g = generate_random_3connected(6 + seed % 9, seed)
        cg, truncated = c_g(g)
        assert cg and not truncated
