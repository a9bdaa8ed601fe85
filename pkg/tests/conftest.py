from __future__ import annotations

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from signedcover.graph import SignedGraph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def signed_graphs(draw, min_n=1, max_n=8, max_m=14, connected=True, loops=True):
    """Signed multigraphs, connected by default (spanning tree plus extra edges)."""
    n = draw(st.integers(min_n, max_n))
    edges = []
    if connected:
        for v in range(1, n):
            edges.append((draw(st.integers(0, v - 1)), v))
    extra = draw(st.integers(0, max(0, max_m - len(edges))))
    for _ in range(extra):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1)) if loops or n == 1 else draw(st.integers(0, n - 1).filter(lambda x: x != u))
        if not loops and u == v:
            continue
        edges.append((u, v))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=len(edges), max_size=len(edges)))
    return SignedGraph.from_edges(n, [(u, v, s) for (u, v), s in zip(edges, signs)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for line in RESULTS:
            terminalreporter.write_line(line)
