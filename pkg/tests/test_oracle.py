import pytest

from snakebox import (CapExceededError, Graph, cycle_graph, hypercube_graph,
                      is_induced_cycle, is_induced_path,
                      longest_induced_cycle, longest_induced_path,
                      max_common_induced_subgraph, path_graph)


@pytest.mark.parametrize("n,snake", [(1, 1), (2, 2), (3, 4), (4, 7)])
def test_snake_lengths(n, snake):
    g = hypercube_graph(n)
    res = longest_induced_path(g, assume_vertex_transitive=True)
    assert res.best_length == snake
    assert res.exact
    assert is_induced_path(g, res.witness)
    assert len(res.witness) - 1 == snake
    assert res.witness[0] == 0  # fixed start under vertex transitivity


@pytest.mark.parametrize("n,coil", [(2, 4), (3, 6), (4, 8)])
def test_coil_lengths(n, coil):
    g = hypercube_graph(n)
    res = longest_induced_cycle(g, assume_vertex_transitive=True)
    assert res.best_length == coil
    assert res.exact
    assert is_induced_cycle(g, res.witness)
    assert len(res.witness) == coil


def test_no_cycle_in_q1():
    res = longest_induced_cycle(hypercube_graph(1), assume_vertex_transitive=True)
    assert res.best_length == 0 and res.witness == []


def test_general_graphs():
    assert longest_induced_path(path_graph(5)).best_length == 4
    assert longest_induced_path(cycle_graph(5)).best_length == 3
    assert longest_induced_cycle(cycle_graph(5)).best_length == 5
    assert longest_induced_cycle(path_graph(6)).best_length == 0
    # single vertex: a path of zero edges
    res = longest_induced_path(Graph(1))
    assert res.best_length == 0 and res.witness == [0]


def test_petersen_like_chordal_check():
    # K_4 minus one edge: longest induced path has 2 edges, the only
    # induced cycle is the triangle
    g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert longest_induced_path(g).best_length == 2
    assert longest_induced_cycle(g).best_length == 3


def test_budget_exhaustion_flags_inexact():
    res = longest_induced_path(hypercube_graph(4), budget=50,
                               assume_vertex_transitive=True)
    assert not res.exact
    assert res.nodes_expanded >= 50
    assert 0 <= res.best_length <= 7
    res_full = longest_induced_path(hypercube_graph(4),
                                    assume_vertex_transitive=True)
    assert res_full.exact and res_full.best_length == 7
    res_c = longest_induced_cycle(hypercube_graph(4), budget=50,
                                  assume_vertex_transitive=True)
    assert not res_c.exact


def test_oracle_is_deterministic():
    a = longest_induced_path(hypercube_graph(4), assume_vertex_transitive=True)
    b = longest_induced_path(hypercube_graph(4), assume_vertex_transitive=True)
    assert a.witness == b.witness and a.nodes_expanded == b.nodes_expanded


def test_mcis_examples():
    assert max_common_induced_subgraph(path_graph(2), path_graph(2))[0] == 2
    assert max_common_induced_subgraph(path_graph(3), cycle_graph(4))[0] == 3
    # triangle vs triangle-free cube: only an edge matches
    assert max_common_induced_subgraph(cycle_graph(3), hypercube_graph(3))[0] == 2
    size, mapping = max_common_induced_subgraph(cycle_graph(4), cycle_graph(4))
    assert size == 4 and len(mapping) == 4


def test_mcis_witness_is_consistent():
    g1 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    g2 = cycle_graph(5)
    size, mapping = max_common_induced_subgraph(g1, g2)
    assert len(mapping) == size
    us = [u for u, _ in mapping]
    ts = [i for _, i in mapping]
    assert len(set(us)) == len(us) and len(set(ts)) == len(ts)
    for a in range(len(mapping)):
        for b in range(a + 1, len(mapping)):
            u, i = mapping[a]
            v, j = mapping[b]
            assert g1.is_edge(u, v) == g2.is_edge(i, j)


def test_mcis_cap():
    with pytest.raises(CapExceededError):
        max_common_induced_subgraph(hypercube_graph(4), path_graph(3))
    assert max_common_induced_subgraph(hypercube_graph(4), path_graph(3),
                                       cap=16)[0] == 3
