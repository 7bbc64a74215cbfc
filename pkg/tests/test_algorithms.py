import pytest
from hypothesis import assume, given, settings, strategies as st

from vbackbone.algorithms import (ALGORITHMS, NodeRole, connect_dominators, das_cds,
                                  greedy_dominating_set, mcds2, mmcds, prune_cds, run_algorithm,
                                  wuli_mcds1)
from vbackbone.errors import CannotConnectError, PreconditionError
from vbackbone.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph

from conftest import connected_graphs
from oracles import (adj_of, all_shortest_paths, brute_min_cds, dominates, greedy_rounds_trace,
                     valid_cds, wuli_trace)


# greedy_dominating_set

def test_greedy_star(star4):
    assert greedy_dominating_set(star4) == {0}


def test_greedy_isolated_node():
    assert greedy_dominating_set(Graph(1)) == {0}


def test_greedy_path5_rounds(p5):
    # replayed round by round with the naive oracle: {1}, then {2}, then {3}
    assert greedy_rounds_trace(adj_of(p5)) == [{1}, {2}, {3}]
    assert greedy_dominating_set(p5) == {1, 2, 3}


def test_greedy_disconnected_graph():
    g = Graph(5, [(0, 1), (1, 2)])
    s = greedy_dominating_set(g)
    assert s == {1, 3, 4}


@settings(max_examples=200, deadline=None)
@given(connected_graphs(max_nodes=14))
def test_greedy_matches_round_trace(g):
    rounds = greedy_rounds_trace(adj_of(g))
    assert all(rounds)
    assert greedy_dominating_set(g) == set().union(*rounds)
    assert dominates(adj_of(g), greedy_dominating_set(g))


# connect_dominators

def test_connect_path5(p5):
    assert all_shortest_paths(adj_of(p5), 1, 3) == [[1, 2, 3]]
    assert connect_dominators(p5, {1, 3}) == ({2}, False)


def test_connect_single_dominator(star4):
    assert connect_dominators(star4, {0}) == (set(), False)


def test_connect_three_hops():
    p4 = path_graph(4)
    assert all_shortest_paths(adj_of(p4), 0, 3) == [[0, 1, 2, 3]]
    assert connect_dominators(p4, {0, 3}) == ({1, 2}, False)


def test_connect_uses_fallback_beyond_three_hops():
    # {1, 5} leaves node 3 undominated and sits 4 hops apart
    p7 = path_graph(7)
    connectors, repaired = connect_dominators(p7, {1, 5})
    assert connectors == {2, 3, 4}
    assert repaired


def test_connect_rejects_disconnected():
    with pytest.raises(CannotConnectError):
        connect_dominators(Graph(2), {0, 1})


def test_connect_rejects_empty(p5):
    with pytest.raises(PreconditionError):
        connect_dominators(p5, set())


@settings(max_examples=200, deadline=None)
@given(connected_graphs(max_nodes=14))
def test_connect_dominating_input_never_needs_fallback(g):
    assert not connect_dominators(g, greedy_dominating_set(g))[1]
    assert not connect_dominators(g, set(g.nodes()))[1]


@settings(max_examples=200, deadline=None)
@given(connected_graphs(max_nodes=14))
def test_connect_gives_connected_superset(g):
    doms = greedy_dominating_set(g)
    connectors, _ = connect_dominators(g, doms)
    assert not connectors & doms
    assert valid_cds(adj_of(g), doms | connectors)


# prune_cds

def test_prune_k4(k4):
    # removing 0 first leaves {1}, which is valid; 1 is then the last member
    assert valid_cds(adj_of(k4), {1})
    assert prune_cds(k4, {0, 1}) == {1}


def test_prune_keeps_last_member(p3):
    assert prune_cds(p3, {1}) == {1}


def test_prune_path5_nothing_removable(p5):
    assert [valid_cds(adj_of(p5), {1, 2, 3} - {x}) for x in (1, 2, 3)] == [False] * 3
    assert prune_cds(p5, {1, 2, 3}) == {1, 2, 3}


def test_prune_rejects_invalid(p5):
    with pytest.raises(PreconditionError):
        prune_cds(p5, {1, 3})


def test_prune_order_matters():
    # triangle 0-1-2 with pendant 3 on 2: from {0, 1, 2} node 0 goes first,
    # then 1, leaving {2}
    g = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert prune_cds(g, {0, 1, 2}) == {2}


@settings(max_examples=200, deadline=None)
@given(connected_graphs(max_nodes=12))
def test_prune_is_one_minimal(g):
    out = prune_cds(g, set(g.nodes()))
    assert prune_cds(g, out) == out
    adj = adj_of(g)
    assert valid_cds(adj, out)
    if len(out) > 1:
        assert all(not valid_cds(adj, out - {x}) for x in out)


@settings(max_examples=200, deadline=None)
@given(connected_graphs(max_nodes=11), st.randoms(use_true_random=False))
def test_prune_one_minimal_from_any_valid_start(g, rnd):
    adj = adj_of(g)
    start = {u for u in g.nodes() if rnd.random() < 0.7}
    assume(valid_cds(adj, start))
    out = prune_cds(g, start)
    assert out <= start
    assert valid_cds(adj, out)
    if len(out) > 1:
        assert all(not valid_cds(adj, out - {x}) for x in out)


# the four algorithms: goldens

@pytest.mark.parametrize("name", sorted(ALGORITHMS))
def test_p3_all_algorithms(name, p3):
    assert run_algorithm(name, p3).cds == {1}


@pytest.mark.parametrize("name", sorted(ALGORITHMS))
def test_single_node_all_algorithms(name):
    res = run_algorithm(name, Graph(1))
    assert res.cds == {0}
    assert res.is_valid_cds


def test_mmcds_path5(p5):
    res = mmcds(p5)
    assert res.cds == {1, 2, 3}
    assert brute_min_cds(adj_of(p5))[0] == 3
    assert res.roles == (NodeRole.DOMINATEE,) + (NodeRole.DOMINATOR,) * 3 + (NodeRole.DOMINATEE,)


def test_mmcds_roles_with_connectors():
    # greedy rounds on P7 give {1}, {4}, {5}; pair (1, 4) adds connectors 2, 3
    assert greedy_dominating_set(path_graph(7)) == {1, 4, 5}
    res = mmcds(path_graph(7))
    assert res.cds == {1, 2, 3, 4, 5}
    assert res.roles[2] == res.roles[3] == NodeRole.CONNECTOR
    assert {u for u, r in enumerate(res.roles) if r != NodeRole.DOMINATEE} == res.cds


def test_wuli_path3(p3):
    marked, keep = wuli_trace(adj_of(p3))
    assert marked == keep == {1}
    res = wuli_mcds1(p3)
    assert res.cds == {1} and not res.repaired


def test_wuli_k4_falls_back(k4):
    assert wuli_trace(adj_of(k4)) == (set(), set())
    res = wuli_mcds1(k4)
    assert res.cds == {0}
    assert res.repaired
    assert res.is_valid_cds


def test_wuli_c4(c4):
    assert wuli_trace(adj_of(c4)) == ({0, 1, 2, 3}, {0, 1, 2, 3})
    res = wuli_mcds1(c4)
    assert res.cds == {0, 1, 2, 3} and not res.repaired


@settings(max_examples=200, deadline=None)
@given(connected_graphs(max_nodes=12))
def test_wuli_matches_trace_when_rules_suffice(g):
    _, keep = wuli_trace(adj_of(g))
    res = wuli_mcds1(g)
    if keep and valid_cds(adj_of(g), keep):
        assert res.cds == keep and not res.repaired
    else:
        assert res.repaired


def test_mcds2_examples(p3, star4, c4):
    assert mcds2(p3).cds == {1}
    assert mcds2(star4).cds == {0}
    assert mcds2(c4).cds == {0, 1, 2, 3}
    assert not mcds2(c4).repaired


def test_mcds2_complete_graph_needs_repair(k4):
    res = mcds2(k4)
    assert res.cds == {0}
    assert res.repaired


def test_mcds2_union_rule(p3, k4):
    assert mcds2(p3, "union").cds == {1}
    res = mcds2(k4, "union")
    assert res.repaired and res.cds == {0}
    with pytest.raises(ValueError):
        mcds2(p3, "bogus")


@settings(max_examples=150, deadline=None)
@given(connected_graphs(max_nodes=12))
def test_mcds2_union_drops_at_least_single(g):
    # anything the single-neighbour rule drops, the union rule drops too,
    # so without repair the union selection is a subset
    adj = adj_of(g)
    single = {i for i in adj if not any(adj[i] - {j} <= adj[j] for j in adj[i])}
    res_single, res_union = mcds2(g, "single"), mcds2(g, "union")
    if not res_single.repaired:
        assert res_single.cds == single
    if not res_union.repaired:
        assert res_union.cds <= single


def test_das_examples(p3, p5):
    assert das_cds(p3).cds == {1}
    # stage one: 1 (gain 3, lowest ID among 1, 2, 3), then 3 (gain 2, ties 4);
    # pieces {0,1,2} and {3,4} join over link (2,3) of weight 1
    res = das_cds(p5)
    assert res.cds == {1, 2, 3}
    assert res.roles[2] == NodeRole.CONNECTOR
    assert das_cds(Graph(1)).cds == {0}


# shared properties

@pytest.mark.parametrize("name", sorted(ALGORITHMS))
def test_disconnected_rejected(name):
    with pytest.raises(PreconditionError):
        run_algorithm(name, Graph(3, [(0, 1)]))


@pytest.mark.parametrize("name", sorted(ALGORITHMS))
def test_empty_graph_rejected(name):
    with pytest.raises(PreconditionError):
        run_algorithm(name, Graph(0))


@settings(max_examples=150, deadline=None)
@given(connected_graphs(max_nodes=10))
def test_valid_and_above_optimum(g):
    adj = adj_of(g)
    best, _ = brute_min_cds(adj)
    for name in ALGORITHMS:
        for rule in ("single", "union"):
            res = run_algorithm(name, g, rule)
            assert valid_cds(adj, res.cds), name
            assert res.is_valid_cds
            assert res.size >= best
            assert res.size == len(res.cds)
            assert len(res.roles) == g.n
            members = {u for u, r in enumerate(res.roles) if r != NodeRole.DOMINATEE}
            assert members == res.cds


@settings(max_examples=100, deadline=None)
@given(connected_graphs(max_nodes=12))
def test_mmcds_one_minimal(g):
    res = mmcds(g)
    adj = adj_of(g)
    if res.size > 1:
        assert all(not valid_cds(adj, res.cds - {x}) for x in res.cds)


@settings(max_examples=50, deadline=None)
@given(connected_graphs(max_nodes=12))
def test_deterministic_and_identity_relabel(g):
    relabeled, labels = Graph.from_labeled_edges(g.edges(), nodes=g.nodes())
    assert labels == list(g.nodes())
    for name in ALGORITHMS:
        first = run_algorithm(name, g)
        assert run_algorithm(name, g) == first
        assert run_algorithm(name, relabeled).cds == first.cds


def test_known_cycle_and_complete_sizes():
    assert mmcds(cycle_graph(6)).size == 4
    assert mmcds(complete_graph(6)).cds == {0}
    assert das_cds(star_graph(6)).cds == {0}
