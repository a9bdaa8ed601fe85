"""Constructive signed-circuit covers.

The pipeline, bottom-up:

* :func:`even_subgraph_for` -- an even subgraph containing a set of negative
  edges, built from a minimum T-join of the positive subgraph;
* :func:`s_cover` -- signed circuits covering a negative edge set and the
  2-edge-cuts through it, pairing leftover negative cycles through a
  minimum T-join of the graph with those cycles contracted;
* :func:`loop_cover_t`, :func:`short_signed_circuit` and
  :func:`cover_outside_core` -- the pieces of the cut-edge induction;
* :func:`bridgeless_circuit_cover` -- exact shortest cycle cover of a
  bridgeless positive graph by branch and bound;
* :func:`scc_19_6` and :func:`scc_8_3` -- the two full covers.

Internal ``_``-prefixed builders return bare circuit lists and skip both
precondition checks and certification; the public wrappers do both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

from .cycles import (
    Barbell,
    Cycle,
    barbell_problems,
    cycle_problems,
    has_barbell,
    maximize_positive_decomposition,
    min_barbell_through_loop,
    min_core_barbell,
    shortest_negative_cycle,
    simple_cycles,
)
from .graph import (
    NEGATIVE,
    POSITIVE,
    Edge,
    GraphError,
    SignedGraph,
    apply_switching,
    bridges,
    components,
    core_edges,
    induced_subgraph,
    is_connected,
    is_flow_admissible,
    is_two_edge_connected,
    negativeness,
    odd_vertices,
)
from .tjoin import MAX_TERMINALS, min_tjoin

#: Default per-block edge ceiling for the exact cycle-cover search.
COVER_EDGE_CEILING = 40
#: Default node budget for one block of the cycle-cover search.
COVER_NODE_BUDGET = 200_000
#: Node budget per block inside the full signed-circuit pipelines, where only
#: the final bound matters and an unclosed search is acceptable.
PIPELINE_NODE_BUDGET = 5_000


class PreconditionError(GraphError):
    pass


class NotFlowAdmissible(PreconditionError):
    def __init__(self, report):
        super().__init__(f"graph is not flow-admissible: {report.reason}")
        self.report = report


@dataclass(frozen=True)
class PositiveCycle:
    cycle: Cycle

    kind = "positive-cycle"

    @property
    def edges(self) -> tuple[int, ...]:
        return self.cycle.edges

    def __len__(self) -> int:
        return len(self.cycle)

    def relabel(self, vertex_map, edge_map) -> "PositiveCycle":
        return PositiveCycle(self.cycle.relabel(vertex_map, edge_map))


SignedCircuit = Union[PositiveCycle, Barbell]


def circuit_problems(G: SignedGraph, c: SignedCircuit) -> list[str]:
    if isinstance(c, PositiveCycle):
        out = cycle_problems(G, c.cycle)
        if not out and c.cycle.is_negative(G):
            out.append("cycle is negative")
        return out
    return barbell_problems(G, c)


@dataclass
class CoverFamily:
    circuits: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return sum(len(c) for c in self.circuits)

    def coverage(self, m: int) -> list[int]:
        counts = [0] * m
        for c in self.circuits:
            for i in c.edges:
                counts[i] += 1
        return counts

    def __len__(self) -> int:
        return len(self.circuits)

    def __iter__(self):
        return iter(self.circuits)


# ---------------------------------------------------------------------------
# checks


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionError(message)


def _require_positive_connected(G: SignedGraph) -> None:
    _require(is_connected(G, G.positive_edges()), "positive subgraph is not connected")


def _require_negativeness_minimal(G: SignedGraph) -> None:
    eps = negativeness(G)[0]
    _require(
        len(G.negative_edges()) == eps,
        f"signature has {len(G.negative_edges())} negative edges but negativeness {eps}; switch first",
    )


# ---------------------------------------------------------------------------
# even subgraph and S-cover


def _even_subgraph(G: SignedGraph, S: frozenset[int]) -> frozenset[int]:
    T = odd_vertices(G, S)
    if not T:
        return S
    _require_positive_connected(G)
    J = min_tjoin(G, T, within=G.positive_edges())
    return S | J


def even_subgraph_for(G: SignedGraph, S: Iterable[int]) -> frozenset[int]:
    """Even edge set H with ``S ⊆ H ⊆ E⁺ ∪ S``, as ``S`` plus a minimum T-join of G⁺.

    G⁺ only has to be connected when ``S`` itself is not already even.
    """
    S = frozenset(S)
    _require(S <= G.negative_edges(), "S must consist of negative edges")
    return _even_subgraph(G, S)


def _cycle_join(cyc: Cycle, T: set[int]) -> tuple[int, ...]:
    """The shorter of the two T-joins that live on the cycle itself."""
    inside = []
    outside = []
    parity = 0
    for v, i in zip(cyc.vertices, cyc.edges):
        if v in T:
            parity ^= 1
        (inside if parity else outside).append(i)
    a, b = tuple(sorted(inside)), tuple(sorted(outside))
    return min(a, b, key=lambda x: (len(x), x))


def _forest_paths(G: SignedGraph, J: set[int], odd: set[int]) -> list[tuple[list[int], list[int]]]:
    """Cut the forest ``J`` into edge-disjoint paths pairing up its odd vertices."""
    inc: dict[int, set[int]] = {}
    for i in J:
        e = G.edges[i]
        inc.setdefault(e.u, set()).add(i)
        inc.setdefault(e.v, set()).add(i)
    odd = set(odd)
    remaining = set(J)
    paths = []
    while remaining:
        start = min(v for v, es in inc.items() if len(es) == 1)
        if start not in odd:
            raise AssertionError("leaf of the join is not an odd vertex")
        verts = [start]
        edges = []
        cur = start
        while True:
            i = min(inc[cur])
            inc[cur].discard(i)
            nxt = G.edges[i].other(cur)
            inc[nxt].discard(i)
            remaining.discard(i)
            verts.append(nxt)
            edges.append(i)
            cur = nxt
            if cur in odd:
                break
        odd.discard(start)
        odd.discard(cur)
        paths.append((verts, edges))
    if odd:
        raise AssertionError("odd vertices left unpaired")
    return paths


def _pair_disjoint_cycles(G: SignedGraph, cycles: list[Cycle]) -> list[Barbell]:
    """Join an even number of vertex-disjoint negative cycles into long barbells.

    Contract every cycle, take a minimum T-join on the contracted vertices,
    lift it back by adding on each cycle the shorter arc set that leaves
    exactly one odd vertex there, and split the lifted forest into paths.
    """
    owner: dict[int, int] = {}
    for k, c in enumerate(cycles):
        for v in c.vertices:
            owner[v] = k
    q_edges = {i for c in cycles for i in c.edges}
    # contracted graph: cycle k becomes vertex k; other vertices follow
    relabel: dict[int, int] = {}
    for v in range(G.n):
        if v in owner:
            relabel[v] = owner[v]
    nxt = len(cycles)
    for v in range(G.n):
        if v not in owner:
            relabel[v] = nxt
            nxt += 1
    kept = [i for i in range(G.m) if i not in q_edges]
    contracted = SignedGraph(
        nxt, tuple(Edge(relabel[G.edges[i].u], relabel[G.edges[i].v], G.edges[i].sign) for i in kept)
    )
    J_small = min_tjoin(contracted, range(len(cycles)))
    J = {kept[i] for i in J_small}

    attach: list[dict[int, int]] = [dict() for _ in cycles]
    for i in J:
        e = G.edges[i]
        for end in (e.u, e.v):
            if end in owner:
                d = attach[owner[end]]
                d[end] = d.get(end, 0) + 1
    lifted = set(J)
    ends = set()
    for k, c in enumerate(cycles):
        odd_here = {v for v, cnt in attach[k].items() if cnt % 2}
        best = None
        for v in sorted(c.vertices):
            arcs = _cycle_join(c, odd_here ^ {v})
            if best is None or (len(arcs), arcs) < (len(best[1]), best[1]):
                best = (v, arcs)
        ends.add(best[0])
        lifted |= set(best[1])

    out = []
    for verts, edges in _forest_paths(G, lifted, ends):
        a, b = owner[verts[0]], owner[verts[-1]]
        cb = cycles[b].vertex_set
        ca = cycles[a].vertex_set
        j = next(k for k, v in enumerate(verts) if v in cb)
        i = max(k for k in range(j) if verts[k] in ca)
        out.append(Barbell(cycles[a], cycles[b], tuple(verts[i:j + 1]), tuple(edges[i:j])))
    return out


def _s_cover(G: SignedGraph, S: frozenset[int]) -> list:
    if not S:
        return []
    H = _even_subgraph(G, S)
    decomposition = maximize_positive_decomposition(G, H)
    out: list = []
    negative = []
    for c in decomposition:
        if c.is_negative(G):
            negative.append(c)
        else:
            out.append(PositiveCycle(c))
    paired = [False] * len(negative)
    for a in range(len(negative)):
        if paired[a]:
            continue
        for b in range(a + 1, len(negative)):
            if not paired[b] and negative[a].vertex_set & negative[b].vertex_set:
                paired[a] = paired[b] = True
                out.append(Barbell(negative[a], negative[b]))
                break
    rest = [c for c, p in zip(negative, paired) if not p]
    if len(rest) % 2:
        raise AssertionError("odd number of unpaired negative cycles")
    if rest:
        out.extend(_pair_disjoint_cycles(G, rest))
    return out


def s_cover(G: SignedGraph, S: Iterable[int]):
    """Signed circuits covering ``S`` and every 2-edge-cut meeting ``S``.

    Needs G 2-edge-connected with connected positive subgraph and ``S`` an
    even set of negative edges.  Returns ``(CoverFamily, Certificate)``.
    """
    from .verify import verify_cover

    S = frozenset(S)
    _require(is_two_edge_connected(G), "graph is not 2-edge-connected")
    _require(S <= G.negative_edges(), "S must consist of negative edges")
    _require(len(S) % 2 == 0, f"|S| = {len(S)} is odd")
    _require_positive_connected(G)
    fam = CoverFamily(_s_cover(G, S))
    return fam, verify_cover(G, fam, "s-cover", subset=S)


# ---------------------------------------------------------------------------
# negative loops, short circuits and the cut-edge induction


def _loop_cover(G: SignedGraph, e: int, t: int) -> list:
    negative = G.negative_edges()
    be = min_barbell_through_loop(G, e)
    if len(negative) % 2 == 0:
        base = _s_cover(G, negative)
        return base if t == 1 else base + [be]
    partner = min(i for i in be.second.edges if G.edges[i].sign == NEGATIVE)
    S = negative - {e} if t == 1 else negative - {partner}
    return _s_cover(G, S) + [be]


def loop_cover_t(G: SignedGraph, e: int, t: int):
    """Cover of ``E(G) - E(core)`` in which the negative loop ``e`` lies in exactly ``t`` barbells."""
    from .verify import verify_cover

    _require(t in (1, 2), f"t must be 1 or 2, got {t}")
    _require(0 <= e < G.m and G.edges[e].is_loop and G.edges[e].sign == NEGATIVE, f"edge {e} is not a negative loop")
    _require(is_two_edge_connected(G), "graph is not 2-edge-connected")
    _require_positive_connected(G)
    report = is_flow_admissible(G)
    if not report.verdict:
        raise NotFlowAdmissible(report)
    _require_negativeness_minimal(G)
    fam = CoverFamily(_loop_cover(G, e, t))
    return fam, verify_cover(G, fam, "loop-cover-t", loop=e, t=t)


def _circuit_cycles(c) -> tuple[Cycle, ...]:
    return (c.cycle,) if isinstance(c, PositiveCycle) else (c.first, c.second)


def _short_signed_circuit(G: SignedGraph):
    if not has_barbell(G):
        e1, e2 = sorted(G.negative_edges())[:2]
        H = _even_subgraph(G, frozenset({e1, e2}))
        best = None
        for c in simple_cycles(G, H):
            if e1 in c.edges and e2 in c.edges and (best is None or len(c) < len(best)):
                best = c
        if best is None:
            raise AssertionError("barbell-free graph without a cycle through two negative edges")
        return PositiveCycle(best)
    return min_core_barbell(G)


def short_signed_circuit(G: SignedGraph):
    """One signed circuit with a negative edge on a cycle and at most ``(tau + |E|)/2`` edges."""
    from .verify import verify_circuit_bound

    _require(is_two_edge_connected(G), "graph is not 2-edge-connected")
    _require(len(G.negative_edges()) >= 2, "need at least two negative edges")
    d = _short_signed_circuit(G)
    return d, verify_circuit_bound(G, d)


def _splice_parts(b: Barbell, loop: int):
    """Split a barbell holding the loop into (other cycle, path from it to the loop vertex)."""
    if b.first.edges == (loop,):
        b = b.reversed()
    if b.second.edges != (loop,):
        raise AssertionError("barbell does not end in the loop")
    if not b.path_edges:
        return b.first, (b.second.vertices[0],), ()
    return b.first, b.path_vertices, b.path_edges


def _holds_loop(c, loop: int) -> bool:
    return isinstance(c, Barbell) and (c.first.edges == (loop,) or c.second.edges == (loop,))


def _pick_cut_edge(G: SignedGraph, cut: frozenset[int]) -> tuple[int, list[int], list[int]]:
    """A cut edge whose far side holds no cut edge; smallest such side, then smallest id."""
    best = None
    for b in sorted(cut):
        e = G.edges[b]
        sides = []
        for end in (e.u, e.v):
            seen = {end}
            stack = [end]
            adj = G.adjacency()
            while stack:
                x = stack.pop()
                for w, i in adj[x]:
                    if i != b and w not in seen:
                        seen.add(w)
                        stack.append(w)
            sides.append(seen)
        for far, near in ((1, 0), (0, 1)):
            inside = sides[far]
            clean = not any(G.edges[c].u in inside and G.edges[c].v in inside for c in cut if c != b)
            if clean:
                key = (len(inside), b)
                if best is None or key < best[0]:
                    best = (key, b, sorted(sides[near]), sorted(inside))
    return best[1], best[2], best[3]


def _with_loop(G: SignedGraph, vertices: list[int], skip: int, anchor: int):
    """Induced subgraph on ``vertices`` plus a new negative loop at ``anchor``.

    Returns (graph, vertex map, edge map) where the loop's id maps to -1.
    """
    sub, vmap, emap = induced_subgraph(G, vertices, skip=(skip,))
    at = vmap.index(anchor)
    grown = SignedGraph(sub.n, sub.edges + (Edge(at, at, NEGATIVE),))
    return grown, vmap, emap + [-1]


def _core_cover_connected(G: SignedGraph) -> list:
    negative = G.negative_edges()
    if not negative:
        return []
    cut = bridges(G)
    if not cut:
        if len(negative) % 2 == 0:
            return _s_cover(G, negative)
        d = _short_signed_circuit(G)
        e = min(i for c in _circuit_cycles(d) for i in c.edges if G.edges[i].sign == NEGATIVE)
        return _s_cover(G, negative - {e}) + [d]

    b, near, far = _pick_cut_edge(G, cut)
    u, v = G.edges[b].u, G.edges[b].v
    if u not in near:
        u, v = v, u
    G1, vmap1, emap1 = _with_loop(G, near, b, u)
    G2, vmap2, emap2 = _with_loop(G, far, b, v)
    loop1, loop2 = G1.m - 1, G2.m - 1

    F1 = _core_cover_connected(G1)
    holders1 = [c for c in F1 if _holds_loop(c, loop1)]
    t = len(holders1)
    if t not in (1, 2):
        raise AssertionError(f"added loop covered {t} times")
    F2 = _loop_cover(G2, loop2, t)
    holders2 = [c for c in F2 if _holds_loop(c, loop2)]
    if len(holders2) != t:
        raise AssertionError("loop multiplicity mismatch across the cut edge")

    out = [c.relabel(vmap1, emap1) for c in F1 if not _holds_loop(c, loop1)]
    out += [c.relabel(vmap2, emap2) for c in F2 if not _holds_loop(c, loop2)]
    for left, right in zip(holders1, holders2):
        c1, pv1, pe1 = _splice_parts(left, loop1)
        c2, pv2, pe2 = _splice_parts(right, loop2)
        # pv1 runs from c1 to u; pv2 runs from c2 to v
        verts = tuple(vmap1[x] for x in pv1) + tuple(vmap2[x] for x in reversed(pv2))
        edges = tuple(emap1[i] for i in pe1) + (b,) + tuple(emap2[i] for i in reversed(pe2))
        out.append(Barbell(c1.relabel(vmap1, emap1), c2.relabel(vmap2, emap2), verts, edges))
    return out


def _core_cover(G: SignedGraph) -> list:
    out = []
    for comp in components(G):
        sub, vmap, emap = induced_subgraph(G, comp)
        if not sub.negative_edges():
            continue
        out += [c.relabel(vmap, emap) for c in _core_cover_connected(sub)]
    return out


def cover_outside_core(G: SignedGraph):
    """Signed circuits covering every edge outside the core; negative loops at most twice.

    The signature must already be negativeness-minimal.
    """
    from .verify import verify_cover

    report = is_flow_admissible(G)
    if not report.verdict:
        raise NotFlowAdmissible(report)
    _require_negativeness_minimal(G)
    fam = CoverFamily(_core_cover(G))
    return fam, verify_cover(G, fam, "bridge-recursion")


# ---------------------------------------------------------------------------
# shortest cycle cover of a bridgeless positive graph


def _blocks(G: SignedGraph, edge_ids: frozenset[int]) -> list[list[int]]:
    """Biconnected components as edge-id lists; each loop is its own block."""
    out = [[i] for i in sorted(edge_ids) if G.edges[i].is_loop]
    adj = G.adjacency(edge_ids)
    disc = [-1] * G.n
    low = [0] * G.n
    clock = 0
    for root in range(G.n):
        if disc[root] != -1 or not adj[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        estack: list[int] = []
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            x, pe, it = stack[-1]
            for w, i in it:
                if i == pe:
                    continue
                if disc[w] == -1:
                    estack.append(i)
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, i, iter(adj[w])))
                    break
                if disc[w] < disc[x]:
                    estack.append(i)
                low[x] = min(low[x], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[x])
                    if low[x] >= disc[p]:
                        block = []
                        while True:
                            i = estack.pop()
                            block.append(i)
                            if i == pe:
                                break
                        out.append(sorted(block))
    return out


def _block_cover(G: SignedGraph, block: list[int], node_budget: int) -> tuple[list[Cycle], bool]:
    """Exact minimum cycle cover of one block; returns (cycles, search closed)."""
    if len(block) == 1 or len({G.edges[i].u for i in block} | {G.edges[i].v for i in block}) == len(block):
        return [next(simple_cycles(G, block))], True
    local = {i: k for k, i in enumerate(block)}
    cycles = list(simple_cycles(G, block))
    k = len(block)
    inc = np.zeros((len(cycles), k), dtype=bool)
    for j, c in enumerate(cycles):
        inc[j, [local[i] for i in c.edges]] = True
    lengths = inc.sum(axis=1).astype(float)
    by_edge = [sorted(np.flatnonzero(inc[:, e]).tolist(), key=lambda j: (lengths[j], j)) for e in range(k)]

    def ratios(unc: np.ndarray) -> np.ndarray:
        # per uncovered edge, the cheapest share it can pay of any one cycle
        hit = inc[:, unc]
        cnt = hit.sum(axis=1)
        share = np.divide(lengths, cnt, out=np.full(len(cycles), np.inf), where=cnt > 0)
        return share, np.where(hit, share[:, None], np.inf).min(axis=0)

    # greedy seed: cheapest cost per newly covered edge
    uncovered = np.ones(k, dtype=bool)
    seed: list[int] = []
    while uncovered.any():
        share, _ = ratios(uncovered)
        j = int(np.argmin(share))
        seed.append(j)
        uncovered &= ~inc[j]
    best = [int(sum(lengths[j] for j in seed)), seed]
    nodes = [0]
    closed = [True]
    # a cover is an even multigraph, so the edges it uses an even number of
    # times form a T-join on the odd vertices of the block
    odd = odd_vertices(G, block)
    if len(odd) <= MAX_TERMINALS:
        sub, vmap, _ = induced_subgraph(G, sorted({x for i in block for x in (G.edges[i].u, G.edges[i].v)}))
        floor = k + len(min_tjoin(sub, [vmap.index(v) for v in odd]))
    else:
        floor = k + len(odd) // 2
    if best[0] <= floor:
        return [cycles[j] for j in seed], True

    def search(unc: np.ndarray, cost: int, chosen: list[int]) -> None:
        if not closed[0] or best[0] <= floor:
            return
        if not unc.any():
            if cost < best[0]:
                best[0] = cost
                best[1] = chosen[:]
            return
        nodes[0] += 1
        if nodes[0] > node_budget:
            closed[0] = False
            return
        _, per_edge = ratios(unc)
        if math.ceil(cost + per_edge.sum() - 1e-9) >= best[0]:
            return
        # branch on the uncovered edge with the fewest candidate cycles
        pick = min(np.flatnonzero(unc).tolist(), key=lambda e: (len(by_edge[e]), e))
        for j in by_edge[pick]:
            chosen.append(j)
            search(unc & ~inc[j], cost + int(lengths[j]), chosen)
            chosen.pop()

    full = np.ones(k, dtype=bool)
    search(full, 0, [])
    return [cycles[j] for j in best[1]], closed[0]


def _min_cycle_cover(
    G: SignedGraph,
    edge_ids: Iterable[int],
    edge_ceiling: int = COVER_EDGE_CEILING,
    node_budget: int = COVER_NODE_BUDGET,
) -> tuple[list[PositiveCycle], bool]:
    edge_ids = frozenset(edge_ids)
    out: list[PositiveCycle] = []
    closed = True
    for block in _blocks(G, edge_ids):
        if len(block) > edge_ceiling:
            raise PreconditionError(f"block with {len(block)} edges exceeds the cover search ceiling of {edge_ceiling}")
        cycles, done = _block_cover(G, block, node_budget)
        closed &= done
        out.extend(PositiveCycle(c) for c in cycles)
    return out, closed


def bridgeless_circuit_cover(
    G: SignedGraph,
    edge_ceiling: int = COVER_EDGE_CEILING,
    node_budget: int = COVER_NODE_BUDGET,
):
    """Shortest circuit cover of a bridgeless all-positive graph.

    Cycles never cross blocks, so each block is solved on its own.  The
    certificate records whether every block search closed (exact optimum).
    """
    from .verify import verify_cover

    _require(all(e.sign == POSITIVE for e in G.edges), "all edges must be positive")
    _require(not bridges(G), "graph has a bridge")
    circuits, closed = _min_cycle_cover(G, G.all_edges(), edge_ceiling, node_budget)
    fam = CoverFamily(circuits)
    cert = verify_cover(G, fam, "bridgeless-5/3")
    cert.details["optimal"] = closed
    if not cert.passed:
        raise AssertionError(f"cover search ended above the bound: {cert.failures}")
    return fam, cert


# ---------------------------------------------------------------------------
# full covers


def _switched(G: SignedGraph) -> SignedGraph:
    _, z = negativeness(G)
    return apply_switching(G, z)


def scc_19_6(G: SignedGraph, edge_ceiling: int = COVER_EDGE_CEILING, node_budget: int = PIPELINE_NODE_BUDGET):
    """Signed-circuit cover of a flow-admissible graph shorter than ``19/6 |E|``.

    Works on a negativeness-minimal switching of ``G``; the circuits are
    reported on the edge ids of ``G`` and are valid under its own signature.
    """
    from .verify import verify_cover

    report = is_flow_admissible(G)
    if not report.verdict:
        raise NotFlowAdmissible(report)
    Gs = _switched(G)
    outside = _core_cover(Gs)
    inside, closed = _min_cycle_cover(Gs, core_edges(Gs), edge_ceiling, node_budget)
    fam = CoverFamily(outside + inside)
    cert = verify_cover(G, fam, "scc-19/6")
    cert.details["core_cover_optimal"] = closed
    return fam, cert


def scc_8_3(G: SignedGraph, edge_ceiling: int = COVER_EDGE_CEILING, node_budget: int = PIPELINE_NODE_BUDGET):
    """Signed-circuit cover shorter than ``8/3 |E|`` for 2-edge-connected graphs of even negativeness."""
    from .verify import verify_cover

    _require(is_two_edge_connected(G), "graph has a bridge or is disconnected; use scc_19_6")
    eps, z = negativeness(G)
    _require(eps % 2 == 0, f"negativeness {eps} is odd; use scc_19_6")
    Gs = apply_switching(G, z)
    outside = _s_cover(Gs, Gs.negative_edges())
    inside, closed = _min_cycle_cover(Gs, core_edges(Gs), edge_ceiling, node_budget)
    fam = CoverFamily(outside + inside)
    cert = verify_cover(G, fam, "scc-8/3")
    cert.details["core_cover_optimal"] = closed
    return fam, cert
