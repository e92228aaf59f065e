import random
import time

import pytest
from hypothesis import given, settings

from conftest import graphs
from domstruct.cycles import Cycle
from domstruct.domination import (
    OracleRefused,
    StructureMethodFailed,
    brute_force_gamma,
    evaluate_families,
    greedy_gamma,
    is_dominating,
    structure_gamma,
)
from domstruct.graph import Graph, generate_named, generate_random_3connected
from domstruct.structure import Family, Structure, build_family, enumerate_structures
from oracles import subset_gamma


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def families_of(g):
    ss, _ = enumerate_structures(g)
    return build_family(g, ss)[0]


def test_is_dominating_examples():
    k4 = generate_named("K4")
    assert is_dominating(k4, [0])
    assert not is_dominating(cycle_graph(6), [0])
    assert is_dominating(cycle_graph(6), range(6))


# values pinned from plain subset enumeration before the solver existed
@pytest.mark.parametrize(
    "name, gamma",
    [("K4", 1), ("K5", 1), ("prism3", 2), ("cube_q3", 2), ("petersen", 3), ("wheel(5)", 1),
     ("moebius_kantor", 4)],
)
def test_oracle_known_values(name, gamma):
    res = brute_force_gamma(generate_named(name))
    assert res.gamma == gamma and res.exact and res.method == "brute_force"
    assert is_dominating(generate_named(name), res.witness)


def test_oracle_c6():
    assert brute_force_gamma(cycle_graph(6)).gamma == 2


def test_oracle_refuses_above_limit():
    with pytest.raises(OracleRefused):
        brute_force_gamma(cycle_graph(31))
    assert brute_force_gamma(cycle_graph(31), limit=31).gamma == 11


@settings(max_examples=150)
@given(graphs(min_n=1, max_n=11))
def test_oracle_matches_subset_enumeration(g):
    res = brute_force_gamma(g)
    assert (res.gamma, res.witness) == subset_gamma(g.n, g.edges)


def test_oracle_at_thirty_vertices_is_fast():
    g = generate_random_3connected(30, 3)
    t = time.perf_counter()
    res = brute_force_gamma(g)
    assert is_dominating(g, res.witness)
    assert time.perf_counter() - t < 20


def test_greedy_examples():
    assert greedy_gamma(generate_named("K4")).gamma == 1
    star = Graph.from_edges(6, [(0, v) for v in range(1, 6)])
    assert greedy_gamma(star).witness == (0,)
    res = greedy_gamma(cycle_graph(6))
    assert res.gamma <= 3 and is_dominating(cycle_graph(6), res.witness) and not res.exact


@given(graphs(min_n=1, max_n=10))
def test_greedy_is_an_upper_bound(g):
    res = greedy_gamma(g)
    assert is_dominating(g, res.witness)
    assert res.gamma >= brute_force_gamma(g).gamma


def test_structure_gamma_k4_and_prism():
    k4 = generate_named("K4")
    res = structure_gamma(k4, families_of(k4))
    assert res.gamma == 1 and res.method == "structure" and not res.exact
    prism = generate_named("prism3")
    res = structure_gamma(prism, families_of(prism))
    assert is_dominating(prism, res.witness)
    assert res.gamma == brute_force_gamma(prism).gamma == 2


def test_structure_gamma_rejects_large_leftover():
    g = generate_named("prism3")
    s = Structure.from_cycles(g, [Cycle.of([0, 1, 2])])
    fam = Family((s,), (0,), s.vertices)
    with pytest.raises(StructureMethodFailed) as info:
        structure_gamma(g, [fam])
    diag = info.value.diagnostics()
    assert diag["candidates"][0]["leftover"] == [[3, 4, 5]]
    assert not diag["candidates"][0]["components_ok"]


def test_structure_gamma_infeasible_assignment_fails_explicitly():
    g = generate_named("cube_q3")
    with pytest.raises(StructureMethodFailed) as info:
        structure_gamma(g, families_of(g))
    assert info.value.candidates[0].labels is None
    with pytest.raises(StructureMethodFailed, match="no families"):
        structure_gamma(g, [])


@settings(max_examples=30)
@given(graphs(min_n=4, max_n=9))
def test_structure_candidates_never_beat_the_oracle(g):
    fams = families_of(g)
    oracle = brute_force_gamma(g).gamma
    for c in evaluate_families(g, fams):
        if c.accepted:
            assert is_dominating(g, c.labels)
            assert len(c.labels) >= oracle
