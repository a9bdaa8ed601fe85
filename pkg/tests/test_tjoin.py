from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import signed_graphs
from signedcover.generators import cycle_graph, path_graph, random_multigraph
from signedcover.graph import SignedGraph, bridges, odd_vertices
from signedcover.oracle import brute_min_tjoin
from signedcover.tjoin import (
    TJoinError,
    TJoinInstance,
    _has_cycle,
    is_tjoin,
    min_tjoin,
    tjoin_symmetric_difference,
    tjoin_upper_bound,
)

C4 = cycle_graph(4)


def test_empty_terminals():
    assert min_tjoin(C4, []) == frozenset()


def test_c4_antipodal():
    J = min_tjoin(C4, [0, 2])
    assert len(J) == 2 and is_tjoin(C4, J, [0, 2])
    assert tjoin_upper_bound(C4) == 2


def test_tree_bound():
    assert tjoin_upper_bound(path_graph(5)) == 5


def test_path_is_sharp():
    P = path_graph(6)
    assert len(min_tjoin(P, [0, 6])) == tjoin_upper_bound(P)


def test_even_cycle_is_sharp():
    C = cycle_graph(8)
    assert len(min_tjoin(C, [0, 4])) == tjoin_upper_bound(C) == 4


def test_odd_terminal_count_rejected():
    with pytest.raises(TJoinError):
        min_tjoin(C4, [0, 1, 2])


def test_disconnected_host_rejected():
    with pytest.raises(TJoinError):
        TJoinInstance(SignedGraph.from_edges(4, [(0, 1, 1), (2, 3, 1)]), frozenset({0, 1}))


def test_unknown_terminal_rejected():
    with pytest.raises(TJoinError):
        min_tjoin(C4, [0, 7])


def test_terminal_ceiling():
    G = path_graph(20)
    with pytest.raises(TJoinError):
        min_tjoin(G, range(16))


def test_loops_never_used():
    G = SignedGraph.from_edges(3, [(0, 0, 1), (0, 1, 1), (1, 1, -1), (1, 2, 1)])
    J = min_tjoin(G, [0, 2])
    assert J == {1, 3}


def test_instance_solve():
    assert TJoinInstance(C4, frozenset({1, 3})).solve() == min_tjoin(C4, [1, 3])


def test_symmetric_difference_identity_and_cycle():
    G = cycle_graph(4)
    J = frozenset({0, 1})
    assert tjoin_symmetric_difference(G, J, ()) == J
    loopy = SignedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 2, 1)])
    J = frozenset({0, 1, 2, 3})
    out = tjoin_symmetric_difference(loopy, J, {0, 1, 2})
    assert out == {3} and odd_vertices(loopy, out) == odd_vertices(loopy, J)


def test_symmetric_difference_rejects_odd_h():
    with pytest.raises(TJoinError):
        tjoin_symmetric_difference(C4, {0}, {0})


@st.composite
def instances(draw, bridgeless=False):
    n = draw(st.integers(2, 10))
    m = draw(st.integers(n, 18))
    seed = draw(st.integers(0, 2**32 - 1))
    G = random_multigraph(n, m, 0.3, seed, bridgeless=bridgeless)
    T = draw(st.sets(st.integers(0, n - 1), max_size=8))
    if len(T) % 2:
        T = set(T) - {max(T)}
    return G, frozenset(T)


@given(instances())
def test_optimal_against_oracle(inst):
    G, T = inst
    J = min_tjoin(G, T)
    assert is_tjoin(G, J, T)
    assert len(J) == brute_min_tjoin(G, T)
    assert not _has_cycle(G, set(J))
    assert len(J) <= tjoin_upper_bound(G)


@given(instances(bridgeless=True))
def test_bridgeless_half_bound(inst):
    G, T = inst
    assert not bridges(G)
    assert len(min_tjoin(G, T)) <= Fraction(G.m, 2)


@given(signed_graphs(min_n=2, max_n=8, max_m=14), st.data())
def test_symmetric_difference_keeps_parity(G, data):
    J = frozenset(data.draw(st.sets(st.integers(0, G.m - 1))))
    H = min_tjoin(G, odd_vertices(G, J)) ^ J  # even by construction
    assert odd_vertices(G, tjoin_symmetric_difference(G, J, H)) == odd_vertices(G, J)
