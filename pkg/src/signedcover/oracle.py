"""Brute-force ground truth for small signed graphs.

Nothing here calls into the constructive modules: cycles are enumerated
edge by edge with a separate search, distances come from Floyd-Warshall and
switchings are enumerated exhaustively with numpy.  Every oracle refuses
inputs above its :class:`OracleBudget` instead of falling back to a
heuristic.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .graph import NEGATIVE, SignedGraph


class BudgetExceeded(RuntimeError):
    pass


class OracleInconsistency(AssertionError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 10
    max_edges: int = 20
    max_circuits: int = 100_000
    max_seconds: float = 60.0

    def __post_init__(self):
        for name in ("max_vertices", "max_edges", "max_circuits", "max_seconds"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def admit(self, G: SignedGraph) -> None:
        if G.n > self.max_vertices:
            raise BudgetExceeded(f"{G.n} vertices exceeds budget of {self.max_vertices}")
        if G.m > self.max_edges:
            raise BudgetExceeded(f"{G.m} edges exceeds budget of {self.max_edges}")


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, seconds: float):
        self.deadline = time.monotonic() + seconds

    def tick(self) -> None:
        if time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted")


@dataclass(frozen=True)
class OracleCircuit:
    """A signed circuit as found by the oracle: kind, sorted edge ids, and its negative cycles."""

    kind: str
    edges: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...] = ()

    def __len__(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------------------
# enumeration


def _all_cycles(G: SignedGraph, clock: _Clock, cap: int) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Every cycle as (edge set, vertex set); each found once, from its smallest edge."""
    inc: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for i, e in enumerate(G.edges):
        if not e.is_loop:
            inc[e.u].append((i, e.v))
            inc[e.v].append((i, e.u))
    found = []
    for s, e in enumerate(G.edges):
        if e.is_loop:
            found.append((frozenset([s]), frozenset([e.u])))
            continue
        target = e.u
        # paths from e.v back to e.u on edges with larger ids
        stack = [(e.v, iter(inc[e.v]))]
        on_path_v = {e.u, e.v}
        path_e = [s]
        while stack:
            clock.tick()
            x, it = stack[-1]
            advanced = False
            for i, w in it:
                if i <= s:
                    continue
                if w == target:
                    found.append((frozenset(path_e + [i]), frozenset(on_path_v)))
                    if len(found) > cap:
                        raise BudgetExceeded(f"more than {cap} cycles")
                    continue
                if w in on_path_v:
                    continue
                on_path_v.add(w)
                path_e.append(i)
                stack.append((w, iter(inc[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if stack:
                    on_path_v.discard(x)
                    path_e.pop()
    return found


def all_cycles(G: SignedGraph, budget: OracleBudget = DEFAULT_BUDGET) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Every cycle of ``G`` as an (edge-id set, vertex set) pair."""
    budget.admit(G)
    return _all_cycles(G, _Clock(budget.max_seconds), budget.max_circuits)


def _neg_count(G: SignedGraph, edges: Iterable[int]) -> int:
    return sum(1 for i in edges if G.edges[i].sign == NEGATIVE)


def _connecting_paths(G: SignedGraph, A: frozenset[int], B: frozenset[int], clock: _Clock):
    """All paths from a vertex of A to a vertex of B with no other vertex in A or B."""
    inc: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for i, e in enumerate(G.edges):
        if not e.is_loop:
            inc[e.u].append((i, e.v))
            inc[e.v].append((i, e.u))
    for a in sorted(A):
        seen = {a}
        edges: list[int] = []

        def walk(x):
            clock.tick()
            for i, w in inc[x]:
                if w in B:
                    yield edges + [i]
                elif w not in A and w not in seen:
                    seen.add(w)
                    edges.append(i)
                    yield from walk(w)
                    edges.pop()
                    seen.discard(w)

        yield from walk(a)


def _enumerate(G: SignedGraph, budget: OracleBudget) -> list[OracleCircuit]:
    budget.admit(G)
    clock = _Clock(budget.max_seconds)
    cycles = _all_cycles(G, clock, budget.max_circuits)
    out: dict[frozenset[int], OracleCircuit] = {}

    def add(edges: frozenset[int], kind: str, parts=()):
        if edges not in out:
            out[edges] = OracleCircuit(kind, tuple(sorted(edges)), tuple(tuple(sorted(p)) for p in parts))
            if len(out) > budget.max_circuits:
                raise BudgetExceeded(f"more than {budget.max_circuits} circuits")

    negative = []
    for edges, verts in cycles:
        if _neg_count(G, edges) % 2 == 0:
            add(edges, "positive-cycle")
        else:
            negative.append((edges, verts))
    for (e1, v1), (e2, v2) in itertools.combinations(negative, 2):
        clock.tick()
        shared = len(v1 & v2)
        if shared == 1:
            add(e1 | e2, "short-barbell", sorted([e1, e2], key=sorted))
        elif shared == 0:
            for path in _connecting_paths(G, v1, v2, clock):
                add(e1 | e2 | frozenset(path), "long-barbell", sorted([e1, e2], key=sorted))
    return sorted(out.values(), key=lambda c: (len(c.edges), c.edges))


def _reversed_graph(G: SignedGraph) -> SignedGraph:
    n, m = G.n, G.m
    return SignedGraph.from_edges(n, [(n - 1 - e.u, n - 1 - e.v, e.sign) for e in reversed(G.edges)])


def enumerate_signed_circuits(
    G: SignedGraph, budget: OracleBudget = DEFAULT_BUDGET, order: str = "forward"
) -> list[OracleCircuit]:
    """Every positive cycle and every barbell of ``G``, deduplicated by edge set.

    ``order="reverse"`` runs the search on the graph with vertex and edge
    labels reversed and maps the result back, which gives an independent
    second traversal for cross-checking.
    """
    if order == "forward":
        return _enumerate(G, budget)
    if order != "reverse":
        raise ValueError(f"unknown order {order!r}")
    m = G.m
    back = lambda ids: tuple(sorted(m - 1 - i for i in ids))
    found = _enumerate(_reversed_graph(G), budget)
    out = [OracleCircuit(c.kind, back(c.edges), tuple(sorted(back(p) for p in c.cycles))) for c in found]
    return sorted(out, key=lambda c: (len(c.edges), c.edges))


# ---------------------------------------------------------------------------
# optimum cover


def brute_optimal_scc(G: SignedGraph, budget: OracleBudget = DEFAULT_BUDGET):
    """A minimum-length signed-circuit cover and its length, by exact set cover.

    Returns ``(CoverFamily, length)``.  An edge lying in no signed circuit
    means no cover exists, which is reported as a ``ValueError``.
    """
    from .cover import CoverFamily  # plain container, no construction logic

    circuits = enumerate_signed_circuits(G, budget)
    clock = _Clock(budget.max_seconds)
    m = G.m
    holders: list[list[int]] = [[] for _ in range(m)]
    masks = []
    for k, c in enumerate(circuits):
        mask = 0
        for i in c.edges:
            mask |= 1 << i
            holders[i].append(k)
        masks.append(mask)
    bare = [i for i in range(m) if not holders[i]]
    if bare:
        raise ValueError(f"edges {bare} lie in no signed circuit; graph is not flow-admissible")
    if m == 0:
        return CoverFamily([]), 0
    sizes = [len(c) for c in circuits]
    size_arr = np.array(sizes, dtype=float)
    incidence = np.zeros((len(circuits), m), dtype=bool)
    for k, c in enumerate(circuits):
        incidence[k, list(c.edges)] = True
    bit_of = 1 << np.arange(m, dtype=np.int64)

    def lower(unc: int) -> float:
        # each uncovered edge pays at least its cheapest share of a circuit
        cols = (bit_of & unc) != 0
        hit = incidence[:, cols]
        counts = hit.sum(axis=1)
        share = np.where(counts > 0, size_arr / np.maximum(counts, 1), np.inf)
        return float(np.where(hit, share[:, None], np.inf).min(axis=0).sum())

    def ranked(edge: int, unc: int) -> list[int]:
        # drop circuits dominated on the uncovered edges by a no-longer one
        opts = sorted(holders[edge], key=lambda k: (sizes[k] / bin(masks[k] & unc).count("1"), sizes[k]))
        kept: list[int] = []
        for k in opts:
            part = masks[k] & unc
            if not any(sizes[j] <= sizes[k] and part & ~masks[j] == 0 for j in kept):
                kept.append(k)
        return kept

    # upper bound from greedy cover by cost per newly covered edge
    unc = (1 << m) - 1
    start: list[int] = []
    while unc:
        k = min(range(len(circuits)), key=lambda j: sizes[j] / (bin(masks[j] & unc).count("1") or 0.5**60))
        start.append(k)
        unc &= ~masks[k]
    best_cost = sum(sizes[k] for k in start)
    best_pick = list(start)
    seen: dict[int, int] = {}

    def go(unc: int, cost: int, pick: list[int]) -> None:
        nonlocal best_cost, best_pick
        clock.tick()
        if not unc:
            if cost < best_cost:
                best_cost, best_pick = cost, list(pick)
            return
        if seen.get(unc, best_cost + 1) <= cost:
            return
        seen[unc] = cost
        if cost + math.ceil(lower(unc) - 1e-9) >= best_cost:
            return
        edge = min((i for i in range(m) if unc >> i & 1), key=lambda i: len(holders[i]))
        for k in ranked(edge, unc):
            pick.append(k)
            go(unc & ~masks[k], cost + sizes[k], pick)
            pick.pop()

    go((1 << m) - 1, 0, [])
    chosen = [circuits[k] for k in sorted(best_pick)]
    return CoverFamily(chosen), best_cost


# ---------------------------------------------------------------------------
# T-joins


def _floyd(G: SignedGraph) -> np.ndarray:
    n = G.n
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for e in G.edges:
        if not e.is_loop:
            d[e.u, e.v] = d[e.v, e.u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


def _pairings(items: list[int]):
    if not items:
        yield []
        return
    a = items[0]
    for j in range(1, len(items)):
        rest = items[1:j] + items[j + 1 :]
        for tail in _pairings(rest):
            yield [(a, items[j])] + tail


def _tjoin_by_subsets(G: SignedGraph, T: frozenset[int]) -> Optional[int]:
    m, n = G.m, G.n
    inc = np.zeros((m, n), dtype=np.uint8)
    for i, e in enumerate(G.edges):
        if not e.is_loop:
            inc[i, e.u] ^= 1
            inc[i, e.v] ^= 1
    want = np.zeros(n, dtype=np.uint8)
    want[list(T)] = 1
    best = None
    chunk = 1 << 14
    shifts = np.arange(m, dtype=np.int64)
    for lo in range(0, 1 << m, chunk):
        ids = np.arange(lo, min(lo + chunk, 1 << m), dtype=np.int64)
        bits = ((ids[:, None] >> shifts) & 1).astype(np.uint8)
        parity = (bits.astype(np.int64) @ inc.astype(np.int64)) % 2
        ok = np.all(parity == want, axis=1)
        if ok.any():
            size = int(bits[ok].sum(axis=1).min())
            best = size if best is None else min(best, size)
    return best


def brute_min_tjoin(G: SignedGraph, terminals: Iterable[int], budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Size of a minimum T-join: best pairing under Floyd-Warshall distances.

    For ``|E| <= 20`` the answer is cross-checked by trying every edge subset.
    """
    T = frozenset(terminals)
    if len(T) % 2:
        raise ValueError(f"|T| = {len(T)} is odd")
    budget.admit(G)
    clock = _Clock(budget.max_seconds)
    if not T:
        value = 0
    else:
        d = _floyd(G)
        best = math.inf
        for pairing in _pairings(sorted(T)):
            clock.tick()
            best = min(best, sum(d[a, b] for a, b in pairing))
        if math.isinf(best):
            raise ValueError("some terminals cannot be paired: host is disconnected")
        value = int(best)
    if G.m <= 20:
        check = _tjoin_by_subsets(G, T)
        if check != value:
            raise OracleInconsistency(f"pairing gives {value}, subset search gives {check}")
    return value


# ---------------------------------------------------------------------------
# frustration and tau


def brute_frustration(G: SignedGraph, max_vertices: int = 20) -> int:
    """Minimum number of negative edges over all ``2^(n-1)`` switchings."""
    n = G.n
    if n > max_vertices:
        raise BudgetExceeded(f"{n} vertices exceeds {max_vertices}")
    loops = sum(1 for e in G.edges if e.is_loop and e.sign == NEGATIVE)
    links = [e for e in G.edges if not e.is_loop]
    if n <= 1 or not links:
        return loops
    us = np.array([e.u for e in links])
    vs = np.array([e.v for e in links])
    neg = np.array([e.sign == NEGATIVE for e in links], dtype=np.uint8)
    best = len(links)
    total = 1 << (n - 1)
    chunk = 1 << 14
    shifts = np.arange(n - 1, dtype=np.int64)
    for lo in range(0, total, chunk):
        ids = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        z = np.zeros((len(ids), n), dtype=np.uint8)
        z[:, 1:] = (ids[:, None] >> shifts) & 1
        flipped = neg[None, :] ^ z[:, us] ^ z[:, vs]
        best = min(best, int(flipped.sum(axis=1).min()))
    return best + loops


def brute_tau(G: SignedGraph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Smallest total cycle length over all barbells; ``|E|`` when there is none."""
    budget.admit(G)
    clock = _Clock(budget.max_seconds)
    negative = [(e, v) for e, v in _all_cycles(G, clock, budget.max_circuits) if _neg_count(G, e) % 2]
    best = G.m
    for (e1, v1), (e2, v2) in itertools.combinations(negative, 2):
        clock.tick()
        size = len(e1) + len(e2)
        if size >= best:
            continue
        shared = len(v1 & v2)
        if shared == 1 or (shared == 0 and next(_connecting_paths(G, v1, v2, clock), None) is not None):
            best = size
    return best
