from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import signed_graphs
from signedcover.cycles import simple_cycles
from signedcover.generators import bowtie, cycle_graph, loops_joined, path_graph, petersen
from signedcover.graph import (
    NEGATIVE,
    Edge,
    GraphError,
    SignedGraph,
    Switching,
    apply_switching,
    bridges,
    check_half_negative_cuts,
    components,
    core_edges,
    is_balanced,
    is_connected,
    is_flow_admissible,
    is_two_edge_connected,
    max_bridgeless_edges,
    max_bridgeless_subgraph,
    minimize_negatives,
    negativeness,
    parse_sg,
    format_sg,
    positive_subgraph,
    read_sg,
    write_sg,
)
from signedcover.oracle import brute_frustration

DIGON_NEG = SignedGraph.from_edges(2, [(0, 1, -1), (0, 1, -1)])
TRIANGLE = cycle_graph(3)


def _bridges_brute(G):
    base = len(components(G))
    return {i for i in range(G.m) if len(components(G, [j for j in range(G.m) if j != i])) > base}


class TestModel:
    def test_rejects_bad_sign(self):
        with pytest.raises(GraphError):
            SignedGraph.from_edges(2, [(0, 1, 0)])

    def test_rejects_missing_vertex(self):
        with pytest.raises(GraphError):
            SignedGraph.from_edges(2, [(0, 2, 1)])

    def test_parallel_edges_stay_distinct(self):
        assert DIGON_NEG.m == 2
        assert DIGON_NEG.negative_edges() == {0, 1}

    def test_loop_degree_counts_two(self):
        G = SignedGraph.from_edges(1, [(0, 0, -1)])
        assert G.degree(0) == 2

    def test_sg_roundtrip(self, tmp_path):
        G = petersen()
        path = tmp_path / "p.sg"
        write_sg(G, path)
        assert read_sg(path) == G
        assert parse_sg(format_sg(G)) == G

    def test_sg_comments_and_loops(self):
        G = parse_sg("# figure eight\nsg 1 2\n0 0 -  # first\n0 0 -\n")
        assert G.n == 1 and G.m == 2 and all(e.is_loop for e in G.edges)

    @pytest.mark.parametrize("text", ["", "sg 2\n", "sg 2 1\n0 1 *\n", "sg 2 2\n0 1 +\n", "graph 1 0\n"])
    def test_sg_rejects_malformed(self, text):
        with pytest.raises(GraphError):
            parse_sg(text)


class TestBridges:
    def test_path(self):
        assert bridges(path_graph(2)) == {0, 1}

    def test_cycle(self):
        assert bridges(cycle_graph(5)) == frozenset()

    def test_bowtie(self):
        assert bridges(bowtie()) == frozenset()

    def test_loops_are_never_bridges(self):
        assert bridges(loops_joined(1)) == {1}

    def test_tree_hat_is_edgeless(self):
        assert max_bridgeless_subgraph(path_graph(4)).m == 0

    def test_bridgeless_hat_is_whole(self):
        P = petersen()
        assert max_bridgeless_edges(P) == P.all_edges()

    def test_petersen_core_is_inner_cycle(self):
        # spokes hang off the inner pentagram once the outer cycle is dropped
        assert core_edges(petersen()) == frozenset(range(10, 15))

    @given(signed_graphs(max_n=8, max_m=14, connected=False))
    def test_matches_brute_force(self, G):
        assert bridges(G) == _bridges_brute(G)

    @given(signed_graphs())
    def test_hat_has_no_bridges(self, G):
        hat = max_bridgeless_edges(G)
        assert hat == G.all_edges() - bridges(G)
        assert not bridges(G, hat)


class TestPositiveSubgraph:
    def test_triangle(self):
        assert positive_subgraph(TRIANGLE).m == 3

    def test_negative_digon(self):
        assert positive_subgraph(DIGON_NEG).m == 0

    def test_petersen(self):
        assert positive_subgraph(petersen()).m == 10


class TestSwitching:
    def test_digon_becomes_positive(self):
        H = apply_switching(DIGON_NEG, Switching(frozenset({0})))
        assert H.negative_edges() == frozenset()

    def test_loop_stays_negative(self):
        G = SignedGraph.from_edges(2, [(0, 0, -1), (0, 1, 1)])
        for z in ([0], [1], [0, 1]):
            assert apply_switching(G, z).edges[0].sign == NEGATIVE

    @given(signed_graphs(), st.data())
    def test_involution_and_cycle_signs(self, G, data):
        z = data.draw(st.sets(st.integers(0, G.n - 1)))
        H = apply_switching(G, z)
        assert apply_switching(H, z) == G
        for k, c in enumerate(simple_cycles(G)):
            if k > 40:
                break
            assert c.is_negative(G) == c.is_negative(H)


class TestBalance:
    def test_negative_digon(self):
        assert is_balanced(DIGON_NEG)

    def test_negative_loop(self):
        assert not is_balanced(SignedGraph.from_edges(1, [(0, 0, -1)]))

    def test_petersen(self):
        assert not is_balanced(petersen())

    @given(signed_graphs())
    def test_balanced_iff_zero_negativeness(self, G):
        assert is_balanced(G) == (negativeness(G)[0] == 0)


class TestNegativeness:
    def test_digon(self):
        eps, z = negativeness(DIGON_NEG)
        assert eps == 0
        assert len(z.vertices) == 1

    def test_loops_joined(self):
        eps, z = negativeness(loops_joined(1))
        assert eps == 2 and z.vertices == frozenset()

    def test_petersen(self):
        eps, z = negativeness(petersen())
        assert eps == brute_frustration(petersen()) == 3
        assert len(apply_switching(petersen(), z).negative_edges()) == 3

    @given(signed_graphs(max_n=9, max_m=16, connected=False))
    def test_matches_exhaustive(self, G):
        eps, z = negativeness(G)
        assert eps == brute_frustration(G)
        assert len(apply_switching(G, z).negative_edges()) == eps

    @given(signed_graphs(max_n=9, max_m=16))
    def test_witness_keeps_positive_part_connected(self, G):
        H, _ = minimize_negatives(G)
        assert is_connected(H, H.positive_edges())
        assert check_half_negative_cuts(H)


class TestAdmissibility:
    def test_loops_joined(self):
        r = is_flow_admissible(loops_joined(1))
        assert r.verdict and r.epsilon == 2 and r.offending_bridge is None

    def test_single_negative_loop(self):
        r = is_flow_admissible(SignedGraph.from_edges(1, [(0, 0, -1)]))
        assert not r.verdict and r.epsilon == 1

    def test_positive_path(self):
        r = is_flow_admissible(path_graph(3))
        assert not r.verdict and r.offending_bridge is not None

    def test_edgeless_is_vacuous(self):
        r = is_flow_admissible(SignedGraph(3, ()))
        assert r.verdict and r.epsilon == 0

    @given(signed_graphs(max_n=7, max_m=12, connected=False))
    def test_verdict_matches_definition(self, G):
        r = is_flow_admissible(G)
        assert r.verdict == (1 not in r.component_epsilons and r.offending_bridge is None)


class TestHalfNegativeCuts:
    def test_minimal_petersen(self):
        H, _ = minimize_negatives(petersen())
        assert check_half_negative_cuts(H)

    def test_raw_petersen_is_not_minimal(self):
        assert not check_half_negative_cuts(petersen())

    def test_negative_digon(self):
        assert not check_half_negative_cuts(DIGON_NEG)

    def test_all_positive(self):
        assert check_half_negative_cuts(petersen(False))

    def test_ceiling(self):
        with pytest.raises(GraphError):
            check_half_negative_cuts(cycle_graph(25))


def test_two_edge_connectivity_ignores_loops():
    G = SignedGraph.from_edges(2, [(0, 0, -1), (0, 1, 1), (0, 1, 1), (1, 1, -1)])
    assert is_two_edge_connected(G)
    assert not is_two_edge_connected(loops_joined(1))
