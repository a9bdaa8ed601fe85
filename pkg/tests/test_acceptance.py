"""Acceptance checks, one test per criterion, each reporting a single PASS/FAIL line.

Instance streams are seeded, so every run checks the same instances.  Each
stream keeps drawing until the requested number of instances meeting the
criterion's preconditions has been collected.
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from signedcover.cover import bridgeless_circuit_cover, cover_outside_core, s_cover, scc_8_3, scc_19_6
from signedcover.cycles import tau
from signedcover.generators import bowtie, cycle_graph, path_graph, petersen, barbell_graph, random_cubic, random_multigraph
from signedcover.graph import (
    apply_switching,
    bridges,
    core_edges,
    is_flow_admissible,
    is_two_edge_connected,
    minimize_negatives,
    negativeness,
)
from signedcover.oracle import BudgetExceeded, OracleBudget, brute_frustration, brute_min_tjoin, brute_optimal_scc, brute_tau
from signedcover.tjoin import is_tjoin, min_tjoin, tjoin_upper_bound
from signedcover.verify import classify_circuit, verify_cover

RESULTS: list[str] = []


def report(number: int, title: str, ok: bool, detail: str) -> None:
    RESULTS.append(f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    print(RESULTS[-1])


def stream(seed: int, count: int, make, keep=lambda G: True, max_draws: int = 50_000):
    """Yield ``count`` instances from ``make(rng, k)`` that satisfy ``keep``."""
    rng = np.random.default_rng(seed)
    got = 0
    for k in range(max_draws):
        G = make(rng, k)
        if G is None or not keep(G):
            continue
        yield G
        got += 1
        if got == count:
            return
    raise RuntimeError(f"stream {seed} produced only {got} of {count} instances")


def connected_multigraph(rng, k, max_n=12, max_m=24, bridgeless=False):
    n = int(rng.integers(1, max_n + 1))
    low = n if bridgeless else max(n - 1, 1)
    if n == 2 and bridgeless:
        low = 2
    m = int(rng.integers(low, max_m + 1))
    return random_multigraph(n, m, float(rng.choice([0.2, 0.35, 0.5, 0.7])), int(rng.integers(2**32)),
                             loop_prob=float(rng.choice([0.0, 0.1])), bridgeless=bridgeless)


def mixed_instance(rng, k, max_n=12, max_m=24):
    kind = k % 4
    seed = int(rng.integers(2**32))
    p = float(rng.choice([0.25, 0.4, 0.6]))
    if kind == 0:
        return connected_multigraph(rng, k, max_n, max_m)
    if kind == 1:
        return connected_multigraph(rng, k, max_n, max_m, bridgeless=True)
    if kind == 2:
        n = 2 * int(rng.integers(2, max_n // 2 + 1))
        return random_cubic(n, p, seed)
    blobs = int(rng.integers(2, 4))
    n = int(rng.integers(blobs, max_n + 1))
    return barbell_graph(n, int(rng.integers(n, max_m + 1)), p, seed, blobs=blobs)


def random_terminals(rng, n, cap=8):
    k = int(rng.integers(0, min(n, cap) + 1))
    k -= k % 2
    return [int(x) for x in rng.choice(n, size=k, replace=False)] if k else []


def admissible(G):
    return G.m > 0 and is_flow_admissible(G).verdict


# ---------------------------------------------------------------------------


def test_criterion_1_tjoin_bound():
    start = time.monotonic()
    rng = np.random.default_rng(101)
    bad = []
    total = 0
    for G in stream(1, 1000, lambda r, k: connected_multigraph(r, k)):
        T = random_terminals(rng, G.n)
        J = min_tjoin(G, T)
        total += 1
        if not is_tjoin(G, J, T) or len(J) > tjoin_upper_bound(G):
            bad.append(G)
    sharp = []
    for k in range(1, 9):
        P = path_graph(k)
        sharp.append(len(min_tjoin(P, [0, k])) == tjoin_upper_bound(P))
    for k in range(2, 9):
        C = cycle_graph(2 * k)
        sharp.append(len(min_tjoin(C, [0, k])) == tjoin_upper_bound(C))
    elapsed = time.monotonic() - start
    ok = not bad and all(sharp) and elapsed <= 120
    report(1, "T-join bound", ok, f"{total - len(bad)}/{total} within bound, {sum(sharp)}/{len(sharp)} sharpness fixtures tight, {elapsed:.1f}s")
    assert ok


def test_criterion_2_bridgeless_half():
    rng = np.random.default_rng(202)
    bad = 0
    total = 0
    for G in stream(2, 1000, lambda r, k: connected_multigraph(r, k, bridgeless=True)):
        assert not bridges(G)
        J = min_tjoin(G, random_terminals(rng, G.n))
        total += 1
        bad += len(J) > Fraction(G.m, 2)
    c4 = len(min_tjoin(cycle_graph(4), [0, 2]))
    ok = bad == 0 and c4 == 2
    report(2, "bridgeless T-join at most |E|/2", ok, f"{total - bad}/{total} within bound, C4 antipodal = {c4}")
    assert ok


def test_criterion_3_s_cover():
    rng = np.random.default_rng(303)
    failures = []
    total = 0

    def keep(G):
        return is_two_edge_connected(G) and admissible(G)

    for G in stream(3, 500, lambda r, k: connected_multigraph(r, k, bridgeless=True), keep):
        Gs, _ = minimize_negatives(G)
        neg = sorted(Gs.negative_edges())
        k = int(rng.integers(0, len(neg) + 1)) if neg else 0
        k -= k % 2
        S = [int(x) for x in rng.choice(neg, size=k, replace=False)] if k else []
        _, cert = s_cover(Gs, S)
        total += 1
        expected_rhs = Fraction(3 * Gs.m - len(core_edges(Gs)) - tau(Gs), 2)
        if not cert.passed or cert.rhs != expected_rhs:
            failures.append(cert.failures)
    G = bowtie()
    _, cert = s_cover(G, G.negative_edges())
    tight = cert.passed and cert.lhs == cert.rhs == 6
    ok = not failures and tight
    report(3, "S-cover", ok, f"{total - len(failures)}/{total} certificates pass, bowtie {cert.lhs} = {cert.rhs}")
    assert ok


def test_criterion_4_main_bound():
    budget = OracleBudget()
    failures = []
    compared = 0
    beaten = 0
    skipped = 0
    total = 0
    for G in stream(4, 500, mixed_instance, admissible):
        fam, cert = scc_19_6(G)
        total += 1
        if not cert.passed or not cert.lhs < Fraction(19 * G.m, 6):
            failures.append(cert.failures)
            continue
        if G.n <= 8:
            try:
                _, opt = brute_optimal_scc(G, budget)
            except BudgetExceeded:
                skipped += 1
                continue
            compared += 1
            beaten += opt > fam.length
    ok = not failures and beaten == 0 and compared > 0
    report(4, "19/6 cover", ok, f"{total - len(failures)}/{total} strict certificates pass, oracle <= constructed on {compared - beaten}/{compared} ({skipped} over oracle budget)")
    assert ok


def test_criterion_5_eight_thirds():
    failures = 0
    total = 0

    def keep(G):
        return G.m > 0 and is_two_edge_connected(G) and negativeness(G)[0] % 2 == 0

    make = lambda r, k: (connected_multigraph(r, k, bridgeless=True) if k % 3 else random_cubic(2 * int(r.integers(2, 7)), 0.4, int(r.integers(2**32))))
    for G in stream(5, 300, make, keep):
        _, cert = scc_8_3(G)
        total += 1
        failures += not (cert.passed and cert.lhs < Fraction(8 * G.m, 3))
    ok = failures == 0
    report(5, "8/3 cover", ok, f"{total - failures}/{total} strict certificates pass")
    assert ok


def test_criterion_6_outside_core():
    failures = []
    total = 0

    def keep(G):
        return admissible(G) and bool(bridges(G))

    for G in stream(6, 300, mixed_instance, keep):
        Gs, _ = minimize_negatives(G)
        fam, cert = cover_outside_core(Gs)
        total += 1
        cov = fam.coverage(Gs.m)
        outside = Gs.all_edges() - core_edges(Gs)
        rhs = 2 * Gs.m - Fraction(len(core_edges(Gs)), 2) + len(bridges(Gs))
        loops_ok = all(cov[i] <= 2 for i, e in enumerate(Gs.edges) if e.is_loop and e.sign < 0)
        if not (cert.passed and all(cov[i] for i in outside) and fam.length <= rhs and loops_ok):
            failures.append(cert.failures)
    ok = not failures
    report(6, "cover outside the core", ok, f"{total - len(failures)}/{total} instances with bridges pass")
    assert ok


def test_criterion_7_petersen():
    start = time.monotonic()
    _, opt = brute_optimal_scc(petersen(), OracleBudget(max_seconds=300))
    fam, cert = bridgeless_circuit_cover(petersen(False))
    elapsed = time.monotonic() - start
    ok = opt == 25 and 21 <= fam.length <= 25 and fam.length == 21 and cert.details["optimal"] and elapsed <= 300
    report(7, "Petersen fixtures", ok, f"signed optimum {opt}, unsigned cover {fam.length} (closed: {cert.details['optimal']}), {elapsed:.1f}s")
    assert ok


def test_criterion_8_oracle_agreement():
    budget = OracleBudget(max_vertices=10, max_edges=20)
    rng = np.random.default_rng(808)
    make = lambda r, k: connected_multigraph(r, k, max_n=10, max_m=16)
    eps = sum(negativeness(G)[0] == brute_frustration(G) for G in stream(81, 300, make))
    taus = sum(tau(G) == brute_tau(G, budget) for G in stream(82, 300, make))
    joins = 0
    for G in stream(83, 300, make):
        T = random_terminals(rng, G.n)
        joins += len(min_tjoin(G, T)) == brute_min_tjoin(G, T, budget)
    ok = eps == taus == joins == 300
    report(8, "oracle agreement", ok, f"negativeness {eps}/300, tau {taus}/300, T-join {joins}/300")
    assert ok


def test_criterion_9_switching_invariance():
    rng = np.random.default_rng(909)
    bad = 0
    circuits = 0
    total = 0
    for G in stream(9, 200, mixed_instance, admissible):
        z = [int(v) for v in range(G.n) if rng.random() < 0.5]
        H = apply_switching(G, z)
        fam, _ = scc_19_6(H)
        total += 1
        for c in fam:
            circuits += 1
            bad += classify_circuit(G, c.edges)[0] != c.kind
        bad += not verify_cover(G, fam, "scc-19/6").passed
    ok = bad == 0
    report(9, "switching invariance", ok, f"{total} pairs, {circuits - bad}/{circuits} circuits valid under the original signature")
    assert ok
