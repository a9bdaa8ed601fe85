"""Cycles, barbells and the barbell length function tau.

A :class:`Cycle` is a closed trail without repeated vertices given by its
vertex sequence and the edge ids joining consecutive vertices
(``edges[k]`` joins ``vertices[k]`` and ``vertices[k+1]``, wrapping around).
A loop is the 1-cycle ``Cycle((v,), (e,))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .graph import NEGATIVE, GraphError, SignedGraph, bridges, components, is_connected, odd_vertices

#: Default ceiling on the number of cycles a single enumeration may visit.
CYCLE_LIMIT = 500_000


class CycleLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) or not self.edges:
            raise GraphError("a cycle needs as many edges as vertices, at least one")

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def negatives(self, G: SignedGraph) -> int:
        return sum(1 for i in self.edges if G.edges[i].sign == NEGATIVE)

    def is_negative(self, G: SignedGraph) -> bool:
        return self.negatives(G) % 2 == 1

    def relabel(self, vertex_map, edge_map) -> "Cycle":
        return Cycle(tuple(vertex_map[v] for v in self.vertices), tuple(edge_map[i] for i in self.edges))


def cycle_problems(G: SignedGraph, c: Cycle) -> list[str]:
    """Structural defects of ``c`` as a cycle of ``G`` (empty list if valid)."""
    out = []
    k = len(c.edges)
    if len(set(c.vertices)) != k:
        out.append("repeated vertex")
    if len(set(c.edges)) != k:
        out.append("repeated edge")
    for pos, i in enumerate(c.edges):
        if not 0 <= i < G.m:
            out.append(f"edge {i} missing")
            continue
        a, b = c.vertices[pos], c.vertices[(pos + 1) % k]
        e = G.edges[i]
        if {e.u, e.v} != {a, b} or (k == 1) != e.is_loop:
            out.append(f"edge {i} does not join {a} and {b}")
    return out


@dataclass(frozen=True)
class Barbell:
    """Two negative cycles, either sharing one vertex or joined by a path.

    ``path_vertices`` runs from a vertex of ``first`` to a vertex of
    ``second``; both path fields are empty for a short barbell.
    """

    first: Cycle
    second: Cycle
    path_vertices: tuple[int, ...] = ()
    path_edges: tuple[int, ...] = ()

    @property
    def kind(self) -> str:
        return "long-barbell" if self.path_edges else "short-barbell"

    @property
    def edges(self) -> tuple[int, ...]:
        return self.first.edges + self.second.edges + self.path_edges

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def core_length(self) -> int:
        return len(self.first) + len(self.second)

    def cycles(self) -> tuple[Cycle, Cycle]:
        return self.first, self.second

    def reversed(self) -> "Barbell":
        return Barbell(self.second, self.first, self.path_vertices[::-1], self.path_edges[::-1])

    def relabel(self, vertex_map, edge_map) -> "Barbell":
        return Barbell(
            self.first.relabel(vertex_map, edge_map),
            self.second.relabel(vertex_map, edge_map),
            tuple(vertex_map[v] for v in self.path_vertices),
            tuple(edge_map[i] for i in self.path_edges),
        )


def barbell_problems(G: SignedGraph, b: Barbell) -> list[str]:
    out = cycle_problems(G, b.first) + cycle_problems(G, b.second)
    if out:
        return out
    if not b.first.is_negative(G) or not b.second.is_negative(G):
        out.append("barbell cycle is not negative")
    shared = b.first.vertex_set & b.second.vertex_set
    if not b.path_edges:
        if len(shared) != 1:
            out.append(f"short barbell cycles share {len(shared)} vertices")
        return out
    if shared:
        out.append("long barbell cycles intersect")
    pv, pe = b.path_vertices, b.path_edges
    if len(pv) != len(pe) + 1 or len(set(pv)) != len(pv):
        out.append("path is not simple")
        return out
    if pv[0] not in b.first.vertex_set or pv[-1] not in b.second.vertex_set:
        out.append("path does not join the two cycles")
    inner = set(pv[1:-1])
    if inner & (b.first.vertex_set | b.second.vertex_set):
        out.append("path is not minimal")
    for k, i in enumerate(pe):
        e = G.edges[i]
        if {e.u, e.v} != {pv[k], pv[k + 1]} or e.is_loop:
            out.append(f"path edge {i} does not join {pv[k]} and {pv[k + 1]}")
    return out


# ---------------------------------------------------------------------------
# even subgraphs


def decompose_even(G: SignedGraph, H: Iterable[int]) -> list[Cycle]:
    """Split the even edge set ``H`` into edge-disjoint cycles.

    Walks an unused trail and cuts a cycle off whenever the trail revisits
    one of its vertices; always leaves a vertex by its smallest unused edge.
    """
    H = frozenset(H)
    if odd_vertices(G, H):
        raise GraphError("edge set is not an even subgraph")
    inc: dict[int, list[int]] = {}
    for i in sorted(H):
        e = G.edges[i]
        inc.setdefault(e.u, []).append(i)
        if not e.is_loop:
            inc.setdefault(e.v, []).append(i)
    used: set[int] = set()
    cursor = {v: 0 for v in inc}
    out: list[Cycle] = []

    def next_edge(v: int) -> Optional[int]:
        lst = inc[v]
        k = cursor[v]
        while k < len(lst) and lst[k] in used:
            k += 1
        cursor[v] = k
        return lst[k] if k < len(lst) else None

    for start in sorted(H):
        if start in used:
            continue
        e = G.edges[start]
        used.add(start)
        if e.is_loop:
            out.append(Cycle((e.u,), (start,)))
            continue
        tv = [e.u]
        te = [start]
        pos = {e.u: 0}
        cur = e.v
        while True:
            if cur in pos:
                k = pos[cur]
                out.append(Cycle(tuple(tv[k:]), tuple(te[k:])))
                for x in tv[k + 1:]:
                    del pos[x]
                del tv[k + 1:]
                del te[k:]
                if not te:
                    break
            else:
                pos[cur] = len(tv)
                tv.append(cur)
            while True:
                i = next_edge(cur)
                if i is None:
                    raise AssertionError("trail stuck in an even subgraph")
                used.add(i)
                f = G.edges[i]
                if f.is_loop:
                    out.append(Cycle((cur,), (i,)))
                    continue
                break
            te.append(i)
            cur = f.other(cur)
    return out


def maximize_positive_decomposition(G: SignedGraph, H: Iterable[int], log: Optional[list] = None) -> list[Cycle]:
    """Cycle decomposition of ``H`` in which no two negative cycles share two vertices.

    While two negative cycles meet in two or more vertices, their union is
    re-decomposed starting from a shortest positive cycle inside it, which
    raises the number of positive cycles by at least one.  ``log`` (if given)
    receives the positive-cycle count after each exchange.
    """
    cycles = decompose_even(G, H)
    while True:
        neg = [k for k, c in enumerate(cycles) if c.is_negative(G)]
        pair = None
        for a in range(len(neg)):
            va = cycles[neg[a]].vertex_set
            for b in range(a + 1, len(neg)):
                if len(va & cycles[neg[b]].vertex_set) >= 2:
                    pair = (neg[a], neg[b])
                    break
            if pair:
                break
        if pair is None:
            return cycles
        union = set(cycles[pair[0]].edges) | set(cycles[pair[1]].edges)
        pos = shortest_positive_cycle(G, union)
        if pos is None:
            raise AssertionError("two negative cycles sharing two vertices always hold a positive cycle")
        replacement = [pos] + decompose_even(G, union - set(pos.edges))
        cycles = [c for k, c in enumerate(cycles) if k not in pair] + replacement
        if log is not None:
            log.append(sum(1 for c in cycles if not c.is_negative(G)))


def shortest_positive_cycle(G: SignedGraph, within: Iterable[int]) -> Optional[Cycle]:
    best = None
    for c in simple_cycles(G, within):
        if not c.is_negative(G) and (best is None or len(c) < len(best)):
            best = c
    return best


# ---------------------------------------------------------------------------
# enumeration


def simple_cycles(G: SignedGraph, within: Optional[Iterable[int]] = None, limit: int = CYCLE_LIMIT) -> Iterator[Cycle]:
    """Every cycle of the (sub)graph exactly once, at the edge-id level.

    Backtracking from each start vertex ``s`` through larger vertices only;
    a direction is kept when its first edge id is below its closing edge id.
    """
    ids = range(G.m) if within is None else sorted(set(within))
    count = 0
    for i in ids:
        e = G.edges[i]
        if e.is_loop:
            count += 1
            yield Cycle((e.u,), (i,))
    adj = G.adjacency(None if within is None else ids)
    for s in range(G.n):
        path_v = [s]
        path_e: list[int] = []
        on_path = {s}
        stack = [iter([(w, i) for (w, i) in adj[s] if w > s])]
        while stack:
            step = next(stack[-1], None)
            if step is None:
                stack.pop()
                if path_e:
                    path_e.pop()
                    on_path.discard(path_v.pop())
                continue
            w, i = step
            if w in on_path:
                continue
            path_v.append(w)
            path_e.append(i)
            on_path.add(w)
            first = path_e[0]
            for x, j in adj[w]:
                if x == s and j != first and first < j:
                    count += 1
                    if count > limit:
                        raise CycleLimitError(f"more than {limit} cycles")
                    yield Cycle(tuple(path_v), tuple(path_e) + (j,))
            stack.append(iter([(x, j) for (x, j) in adj[w] if x > s and x not in on_path]))


def shortest_negative_cycle(G: SignedGraph, within: Optional[Iterable[int]] = None) -> Optional[Cycle]:
    """A negative cycle with the fewest edges, or ``None`` if balanced.

    BFS on the signed double cover: a negative edge flips the parity label,
    and the shortest walk from ``(v, 0)`` to ``(v, 1)`` minimised over ``v``
    is always a simple cycle.
    """
    ids = range(G.m) if within is None else sorted(set(within))
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(G.n)]
    for i in ids:
        e = G.edges[i]
        bit = 1 if e.sign == NEGATIVE else 0
        adj[e.u].append((e.v, i, bit))
        if not e.is_loop:
            adj[e.v].append((e.u, i, bit))
    for a in adj:
        a.sort()
    best: Optional[tuple[int, int, dict]] = None
    for v in range(G.n):
        parent: dict[tuple[int, int], tuple[tuple[int, int], int]] = {}
        seen = {(v, 0)}
        queue = deque([((v, 0), 0)])
        found = None
        while queue:
            (x, p), d = queue.popleft()
            if best is not None and d + 1 >= best[0]:
                break
            for w, i, bit in adj[x]:
                state = (w, p ^ bit)
                if state in seen:
                    continue
                seen.add(state)
                parent[state] = ((x, p), i)
                if state == (v, 1):
                    found = d + 1
                    break
                queue.append((state, d + 1))
            if found is not None:
                break
        if found is not None and (best is None or found < best[0]):
            best = (found, v, parent)
    if best is None:
        return None
    _, v, parent = best
    verts = []
    edges = []
    state = (v, 1)
    while state != (v, 0):
        prev, i = parent[state]
        edges.append(i)
        verts.append(prev[0])
        state = prev
    verts.reverse()
    edges.reverse()
    cyc = Cycle(tuple(verts), tuple(edges))
    if cycle_problems(G, cyc):
        raise AssertionError("shortest odd closed walk was not a simple cycle")
    return cyc


def _sign_options(G: SignedGraph) -> tuple[dict, list[list[int]]]:
    """Per vertex pair: smallest positive and negative edge ids (-1 if none)."""
    opts: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(G.edges):
        if e.is_loop:
            continue
        key = (min(e.u, e.v), max(e.u, e.v))
        slot = opts.setdefault(key, [-1, -1])
        k = 1 if e.sign == NEGATIVE else 0
        if slot[k] == -1:
            slot[k] = i
    nbrs: list[list[int]] = [[] for _ in range(G.n)]
    for a, b in opts:
        nbrs[a].append(b)
        nbrs[b].append(a)
    for lst in nbrs:
        lst.sort()
    return opts, nbrs


def _odd_realisation(opts: dict, seq: list[int]) -> Cycle:
    """Pick parallel edges along the vertex cycle ``seq`` to make it negative."""
    k = len(seq)
    choice = []
    parity = 0
    for t in range(k):
        a, b = seq[t], seq[(t + 1) % k]
        pos, neg = opts[(min(a, b), max(a, b))]
        if pos != -1:
            choice.append(pos)
        else:
            choice.append(neg)
            parity ^= 1
    if parity == 0:
        for t in range(k):
            a, b = seq[t], seq[(t + 1) % k]
            pos, neg = opts[(min(a, b), max(a, b))]
            if pos != -1 and neg != -1:
                choice[t] = neg
                break
        else:
            raise AssertionError("vertex cycle has no negative realisation")
    return Cycle(tuple(seq), tuple(choice))


def _extend_parity(p: int, pos: int, neg: int) -> int:
    # p is a 2-bit set: bit 0 = even sign reachable, bit 1 = odd sign reachable
    out = p if pos != -1 else 0
    if neg != -1:
        out |= (p & 1) << 1 | p >> 1
    return out


def negative_cycle_classes(G: SignedGraph, limit: int = CYCLE_LIMIT) -> dict[int, Cycle]:
    """One negative cycle per vertex set that carries one, keyed by vertex bitmask.

    Every cycle on a given vertex set with at least two vertices has exactly
    that many edges, so the representative fixes the length.  Loops are
    included (one per vertex).
    """
    out: dict[int, Cycle] = {}
    for i, e in enumerate(G.edges):
        if e.is_loop and e.sign == NEGATIVE and (1 << e.u) not in out:
            out[1 << e.u] = Cycle((e.u,), (i,))
    opts, nbrs = _sign_options(G)
    for (a, b), (pos, neg) in sorted(opts.items()):
        if pos != -1 and neg != -1:
            out.setdefault((1 << a) | (1 << b), Cycle((a, b), (pos, neg)))
    count = 0
    for s in range(G.n):
        # stack frames: (vertex, parity set bits, iterator over larger neighbours)
        path = [s]
        masks = [1 << s]
        pars = [1]
        stack = [iter([w for w in nbrs[s] if w > s])]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                if len(path) > 1:
                    path.pop()
                    masks.pop()
                    pars.pop()
                continue
            if masks[-1] >> w & 1:
                continue
            x = path[-1]
            pos, neg = opts[(min(x, w), max(x, w))]
            p = pars[-1]
            nxt = _extend_parity(p, pos, neg)
            path.append(w)
            masks.append(masks[-1] | 1 << w)
            pars.append(nxt)
            # close back to s; s < w always, and path[1] < w keeps one direction
            if len(path) >= 3 and path[1] < w and (s, w) in opts:
                count += 1
                if count > limit:
                    raise CycleLimitError(f"more than {limit} cycles")
                closed = _extend_parity(nxt, *opts[(s, w)])
                if closed & 2 and masks[-1] not in out:
                    out[masks[-1]] = _odd_realisation(opts, list(path))
            stack.append(iter([y for y in nbrs[w] if y > s and not masks[-1] >> y & 1]))
    return out


# ---------------------------------------------------------------------------
# tau and barbells


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _subset_min(values: dict[int, int], n: int) -> np.ndarray:
    """``f[X] = min(values[Y] for Y ⊆ X)`` over all ``2**n`` vertex masks."""
    big = np.iinfo(np.int64).max // 4
    f = np.full(1 << n, big, dtype=np.int64)
    for mask, val in values.items():
        if val < f[mask]:
            f[mask] = val
    for b in range(n):
        view = f.reshape(-1, 2, 1 << b)
        np.minimum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return f


def _negative_loops(G: SignedGraph) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for i, e in enumerate(G.edges):
        if e.is_loop and e.sign == NEGATIVE:
            out.setdefault(e.u, []).append(i)
    return out


def tau(G: SignedGraph, limit: int = CYCLE_LIMIT) -> int:
    """Smallest ``|C1| + |C2|`` over barbells of G; ``|E(G)|`` if G has none."""
    best = _barbell_core_minimum(G, limit)
    return G.m if best is None else best


def has_barbell(G: SignedGraph, limit: int = CYCLE_LIMIT) -> bool:
    return _barbell_core_minimum(G, limit) is not None


def _barbell_core_minimum(G: SignedGraph, limit: int) -> Optional[int]:
    classes = negative_cycle_classes(G, limit)
    if not classes:
        return None
    loops = _negative_loops(G)
    best: Optional[int] = None

    def offer(x: int) -> None:
        nonlocal best
        if best is None or x < best:
            best = x

    for comp in components(G):
        cmask = 0
        for v in comp:
            cmask |= 1 << v
        loop_vs = [v for v in comp if v in loops]
        if len(loop_vs) >= 2 or any(len(loops[v]) >= 2 for v in loop_vs):
            offer(2)
        cyc = {mask: _popcount(mask) for mask in classes if mask & cmask and _popcount(mask) >= 2}
        if not cyc:
            continue
        if loop_vs:
            offer(1 + min(cyc.values()))
        if G.n <= 20:
            f = _subset_min(cyc, G.n)
            for mask, size in cyc.items():
                outside = cmask & ~mask
                m = mask
                while m:
                    low = m & -m
                    m ^= low
                    partner = int(f[outside | low])
                    if partner < (1 << 60):
                        offer(size + partner)
        else:
            ordered = sorted(cyc.items(), key=lambda kv: (kv[1], kv[0]))
            for a, (ma, sa) in enumerate(ordered):
                if best is not None and 2 * sa >= best:
                    break
                for mb, sb in ordered[a + 1:]:
                    if best is not None and sa + sb >= best:
                        break
                    if _popcount(ma & mb) <= 1:
                        offer(sa + sb)
    return best


def shortest_connecting_path(
    G: SignedGraph,
    sources: Iterable[int],
    targets: Iterable[int],
    within: Optional[Iterable[int]] = None,
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Shortest path from the source set to the target set.

    Among shortest paths the vertex sequence is lexicographically smallest
    (then edge ids).  Such a path meets each set only at its end, so it is a
    minimal connecting path.  Returns ``(vertices, edges)`` or ``None``.
    """
    sources = sorted(set(sources))
    targets = set(targets)
    adj = G.adjacency(within)
    dist = {t: 0 for t in targets}
    queue = deque(sorted(targets))
    while queue:
        x = queue.popleft()
        for w, _ in adj[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                queue.append(w)
    reach = [s for s in sources if s in dist]
    if not reach:
        return None
    start = min(reach, key=lambda s: (dist[s], s))
    verts = [start]
    edges = []
    cur = start
    while dist[cur] > 0:
        for w, i in adj[cur]:
            if dist.get(w, -1) == dist[cur] - 1:
                verts.append(w)
                edges.append(i)
                cur = w
                break
    return tuple(verts), tuple(edges)


def barbell_from_cycles(G: SignedGraph, c1: Cycle, c2: Cycle, within: Optional[Iterable[int]] = None) -> Optional[Barbell]:
    """Shortest barbell on two negative cycles, if they form one."""
    shared = c1.vertex_set & c2.vertex_set
    if len(shared) == 1:
        return Barbell(c1, c2)
    if shared:
        return None
    route = shortest_connecting_path(G, c1.vertices, c2.vertices, within)
    if route is None:
        return None
    return Barbell(c1, c2, route[0], route[1])


def min_barbell_through_loop(G: SignedGraph, e: int) -> Barbell:
    """Barbell on the negative loop ``e`` and a shortest negative cycle of ``G - e``.

    The connecting path is a shortest minimal path.  Requires ``G`` to be
    2-edge-connected (loops ignored) and ``G - e`` unbalanced.
    """
    if not 0 <= e < G.m or not G.edges[e].is_loop or G.edges[e].sign != NEGATIVE:
        raise GraphError(f"edge {e} is not a negative loop")
    if not is_connected(G) or bridges(G):
        raise GraphError("graph is not 2-edge-connected")
    rest = [i for i in range(G.m) if i != e]
    other = shortest_negative_cycle(G, rest)
    if other is None:
        raise GraphError("no negative cycle avoids the loop")
    w = G.edges[e].u
    loop = Cycle((w,), (e,))
    b = barbell_from_cycles(G, loop, other, rest)
    if b is None:
        raise GraphError("loop and cycle are not connected")
    return b


def negative_cycle_representatives(G: SignedGraph, limit: int = CYCLE_LIMIT) -> list[Cycle]:
    """Every negative loop, plus one negative cycle per vertex set of size >= 2."""
    out = []
    for v, ids in sorted(_negative_loops(G).items()):
        out.extend(Cycle((v,), (i,)) for i in ids)
    classes = negative_cycle_classes(G, limit)
    for mask in sorted(classes, key=lambda m: (_popcount(m), m)):
        if _popcount(mask) >= 2:
            out.append(classes[mask])
    return out


def min_core_barbell(G: SignedGraph, limit: int = CYCLE_LIMIT) -> Optional[Barbell]:
    """Among barbells whose two cycles total tau edges, one with fewest edges."""
    target = _barbell_core_minimum(G, limit)
    if target is None:
        return None
    reps = negative_cycle_representatives(G, limit)
    by_len: dict[int, list[Cycle]] = {}
    for c in reps:
        by_len.setdefault(len(c), []).append(c)
    best: Optional[Barbell] = None
    for la in sorted(by_len):
        lb = target - la
        if lb < la or lb not in by_len:
            continue
        left = by_len[la]
        for ia, c1 in enumerate(left):
            right = left[ia + 1:] if la == lb else by_len[lb]
            for c2 in right:
                if best is not None and len(best) == target:
                    return best
                b = barbell_from_cycles(G, c1, c2)
                if b is not None and (best is None or len(b) < len(best)):
                    best = b
    if best is None:
        raise AssertionError("tau is attained but no barbell was rebuilt")
    return best
