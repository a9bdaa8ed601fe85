"""Exact minimum T-joins on unit-weight multigraphs.

A minimum T-join is the symmetric difference of shortest paths along a
minimum-weight perfect pairing of T.  Distances come from BFS and the pairing
is solved exactly by dynamic programming over subsets of T, which is fine
for the terminal counts this package deals with.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .graph import GraphError, SignedGraph, is_connected, max_bridgeless_edges, odd_vertices

MAX_TERMINALS = 14


class TJoinError(GraphError):
    pass


@dataclass(frozen=True)
class TJoinInstance:
    host: SignedGraph
    terminals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        _check_instance(self.host, self.terminals, None)

    def solve(self, max_terminals: int = MAX_TERMINALS) -> frozenset[int]:
        return min_tjoin(self.host, self.terminals, max_terminals=max_terminals)


def _check_instance(G: SignedGraph, T: frozenset[int], within) -> None:
    if len(T) % 2:
        raise TJoinError(f"|T| = {len(T)} is odd")
    bad = [t for t in T if not 0 <= t < G.n]
    if bad:
        raise TJoinError(f"terminals {sorted(bad)} are not vertices")
    if not is_connected(G, within):
        raise TJoinError("host graph is disconnected")


def is_tjoin(G: SignedGraph, J: Iterable[int], T: Iterable[int]) -> bool:
    return odd_vertices(G, J) == frozenset(T)


def _bfs_tree(adj, source: int) -> tuple[list[int], list[tuple[int, int]]]:
    n = len(adj)
    dist = [-1] * n
    parent: list[tuple[int, int]] = [(-1, -1)] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for w, i in adj[x]:
            if dist[w] == -1:
                dist[w] = dist[x] + 1
                parent[w] = (x, i)
                queue.append(w)
    return dist, parent


def _has_cycle(G: SignedGraph, J: set[int]) -> bool:
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in J:
        e = G.edges[i]
        a, b = find(e.u), find(e.v)
        if a == b:
            return True
        parent[a] = b
    return False


def _strip_cycles(G: SignedGraph, J: set[int]) -> set[int]:
    """Remove cycles from ``J`` until it is a forest (never grows |J|)."""
    from .cycles import simple_cycles  # cycles imports this module

    J = {i for i in J if not G.edges[i].is_loop}
    while _has_cycle(G, J):
        cyc = next(simple_cycles(G, J))
        J -= set(cyc.edges)
    return J


def min_tjoin(
    G: SignedGraph,
    terminals: Iterable[int],
    within: Optional[Iterable[int]] = None,
    max_terminals: int = MAX_TERMINALS,
) -> frozenset[int]:
    """Minimum T-join of ``G`` (optionally restricted to edge ids ``within``).

    Edge signs are ignored.  Loops never appear in the result.
    """
    T = frozenset(terminals)
    if within is not None:
        within = frozenset(within)
    _check_instance(G, T, within)
    if not T:
        return frozenset()
    if len(T) > max_terminals:
        raise TJoinError(f"|T| = {len(T)} exceeds the exact pairing ceiling of {max_terminals}")
    adj = G.adjacency(within)
    ts = sorted(T)
    k = len(ts)
    trees = [_bfs_tree(adj, t) for t in ts]
    dist = [[trees[a][0][ts[b]] for b in range(k)] for a in range(k)]

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, int]:
        # returns (cost, partner of the lowest set bit)
        if mask == 0:
            return 0, -1
        a = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << a)
        top = (None, -1)
        r = rest
        while r:
            b = (r & -r).bit_length() - 1
            r &= r - 1
            cost = dist[a][b] + best(rest & ~(1 << b))[0]
            if top[0] is None or cost < top[0]:
                top = (cost, b)
        return top

    J: set[int] = set()
    mask = (1 << k) - 1
    while mask:
        a = (mask & -mask).bit_length() - 1
        b = best(mask)[1]
        parent = trees[a][1]
        x = ts[b]
        while x != ts[a]:
            p, i = parent[x]
            J ^= {i}
            x = p
        mask &= ~((1 << a) | (1 << b))
    J = _strip_cycles(G, J)
    return frozenset(J)


def tjoin_upper_bound(G: SignedGraph) -> Fraction:
    """``|E(G)| - |E(Ĝ)|/2`` for the maximal bridgeless subgraph Ĝ."""
    return Fraction(G.m) - Fraction(len(max_bridgeless_edges(G)), 2)


def tjoin_symmetric_difference(G: SignedGraph, J: Iterable[int], H: Iterable[int]) -> frozenset[int]:
    """``J ⊕ H`` for an even edge set ``H``; the parity pattern of J is kept."""
    H = frozenset(H)
    if odd_vertices(G, H):
        raise TJoinError("the second argument is not an even subgraph")
    return frozenset(J) ^ H
