from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import signed_graphs
from signedcover.generators import bowtie, cycle_graph, figure_eight, loops_joined, petersen, random_multigraph
from signedcover.graph import SignedGraph, negativeness
from signedcover.oracle import (
    BudgetExceeded,
    OracleBudget,
    brute_frustration,
    brute_min_tjoin,
    brute_optimal_scc,
    brute_tau,
    enumerate_signed_circuits,
)
from signedcover.verify import classify_circuit, verify_cover


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        OracleBudget(max_vertices=0)


def test_budget_refuses_large_graphs():
    with pytest.raises(BudgetExceeded):
        enumerate_signed_circuits(cycle_graph(11))
    with pytest.raises(BudgetExceeded):
        brute_tau(random_multigraph(6, 21, 0.3, seed=0))


def test_circuit_cap():
    G = random_multigraph(5, 18, 0.5, seed=3)
    with pytest.raises(BudgetExceeded):
        enumerate_signed_circuits(G, OracleBudget(max_circuits=5))


class TestEnumeration:
    def test_triangle(self):
        assert len(enumerate_signed_circuits(cycle_graph(3))) == 1

    def test_figure_eight(self):
        (c,) = enumerate_signed_circuits(figure_eight())
        assert c.kind == "short-barbell"

    def test_bowtie_both_orders(self):
        a = enumerate_signed_circuits(bowtie())
        b = enumerate_signed_circuits(bowtie(), order="reverse")
        assert [c.edges for c in a] == [c.edges for c in b] == [tuple(range(6))]

    def test_petersen_counts(self):
        # with no barbells only the positive cycles remain: 31 of the 57 cycles
        assert len(enumerate_signed_circuits(petersen())) == 31
        assert len(enumerate_signed_circuits(petersen(False))) == 57

    @given(signed_graphs(max_n=7, max_m=11, connected=False))
    def test_orders_agree_and_are_valid(self, G):
        a = enumerate_signed_circuits(G)
        b = enumerate_signed_circuits(G, order="reverse")
        assert [(c.kind, c.edges) for c in a] == [(c.kind, c.edges) for c in b]
        for c in a:
            assert classify_circuit(G, c.edges)[0] == c.kind


class TestOptimalCover:
    def test_triangle(self):
        assert brute_optimal_scc(cycle_graph(3))[1] == 3

    def test_loops_joined(self):
        assert brute_optimal_scc(loops_joined(1))[1] == 3

    def test_petersen(self):
        fam, value = brute_optimal_scc(petersen())
        assert value == 25 == fam.length
        assert verify_cover(petersen(), fam, "scc-19/6").passed

    def test_parallel_loop_digon(self):
        G = SignedGraph.from_edges(2, [(0, 0, -1), (0, 1, 1), (0, 1, 1), (1, 1, -1)])
        assert brute_optimal_scc(G)[1] == 5

    def test_not_admissible(self):
        with pytest.raises(ValueError):
            brute_optimal_scc(SignedGraph.from_edges(2, [(0, 1, 1)]))


class TestTJoin:
    def test_empty(self):
        assert brute_min_tjoin(cycle_graph(4), []) == 0

    def test_c4(self):
        assert brute_min_tjoin(cycle_graph(4), [0, 2]) == 2

    def test_odd(self):
        with pytest.raises(ValueError):
            brute_min_tjoin(cycle_graph(4), [0])


class TestFrustration:
    def test_balanced(self):
        assert brute_frustration(cycle_graph(4, sign=-1)) == 0

    def test_loops(self):
        G = SignedGraph.from_edges(2, [(0, 0, -1), (1, 1, -1), (1, 1, -1), (0, 1, 1)])
        assert brute_frustration(G) == 3

    def test_petersen(self):
        assert brute_frustration(petersen()) == negativeness(petersen())[0]

    def test_ceiling(self):
        with pytest.raises(BudgetExceeded):
            brute_frustration(cycle_graph(21))


class TestTau:
    def test_positive(self):
        assert brute_tau(cycle_graph(5)) == 5

    def test_bowtie(self):
        assert brute_tau(bowtie()) == 6

    @given(signed_graphs(max_n=7, max_m=11))
    def test_matches_enumeration(self, G):
        # restrict the full enumeration to barbells and read off tau
        sizes = [sum(len(p) for p in c.cycles) for c in enumerate_signed_circuits(G) if c.kind != "positive-cycle"]
        assert brute_tau(G) == (min(sizes) if sizes else G.m)
