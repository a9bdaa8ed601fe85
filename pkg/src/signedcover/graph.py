"""Signed multigraphs and the structural primitives built on them.

Vertices are dense integers ``0..n-1``.  Edges are stored in a tuple whose
index is the edge id; parallel edges and loops are ordinary entries.  Every
algorithm in the package works on edge ids, never on endpoint pairs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

POSITIVE = 1
NEGATIVE = -1

#: Hard ceiling for the exact frustration search.
MAX_NEGATIVENESS_VERTICES = 30


class GraphError(ValueError):
    """Raised for malformed graphs or violated preconditions."""


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    sign: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def negative(self) -> bool:
        return self.sign == NEGATIVE

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class SignedGraph:
    n: int
    edges: tuple[Edge, ...]
    # origin[i] is the id of edge i in the graph this one was cut from.
    origin: Optional[tuple[int, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.n < 0:
            raise GraphError("negative vertex count")
        for i, e in enumerate(self.edges):
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphError(f"edge {i} references a missing vertex")
            if e.sign not in (POSITIVE, NEGATIVE):
                raise GraphError(f"edge {i} has sign {e.sign!r}; expected +1 or -1")
        if self.origin is not None and len(self.origin) != len(self.edges):
            raise GraphError("origin map length differs from edge count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> "SignedGraph":
        return cls(n, tuple(Edge(int(u), int(v), int(s)) for u, v, s in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(e.sign for e in self.edges)

    def all_edges(self) -> frozenset[int]:
        return frozenset(range(self.m))

    def negative_edges(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.edges) if e.sign == NEGATIVE)

    def positive_edges(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.edges) if e.sign == POSITIVE)

    def loops(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.edges) if e.is_loop)

    @cached_property
    def _full_adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            if e.is_loop:
                continue
            adj[e.u].append((e.v, i))
            adj[e.v].append((e.u, i))
        return tuple(tuple(sorted(a)) for a in adj)

    def adjacency(self, within: Optional[Iterable[int]] = None) -> list[list[tuple[int, int]]]:
        """Per-vertex ``(neighbour, edge id)`` lists sorted by neighbour then id.

        Loops are left out: they never matter for connectivity or paths.
        """
        if within is None:
            return [list(a) for a in self._full_adjacency]
        keep = within if isinstance(within, (set, frozenset)) else frozenset(within)
        return [[(w, i) for (w, i) in a if i in keep] for a in self._full_adjacency]

    def degree(self, v: int, within: Optional[Iterable[int]] = None) -> int:
        ids = range(self.m) if within is None else within
        d = 0
        for i in ids:
            e = self.edges[i]
            if e.u == v:
                d += 1
            if e.v == v:
                d += 1
        return d

    def subgraph(self, edge_ids: Iterable[int]) -> "SignedGraph":
        """Spanning subgraph on the given edge ids; ``origin`` maps ids back."""
        ids = sorted(set(edge_ids))
        base = self.origin
        origin = tuple(base[i] if base is not None else i for i in ids)
        return SignedGraph(self.n, tuple(self.edges[i] for i in ids), origin)

    def with_signs(self, signs: Iterable[int]) -> "SignedGraph":
        signs = tuple(signs)
        if len(signs) != self.m:
            raise GraphError("sign vector length differs from edge count")
        return SignedGraph(self.n, tuple(Edge(e.u, e.v, s) for e, s in zip(self.edges, signs)), self.origin)

    def edge_sign(self, i: int) -> int:
        return self.edges[i].sign


def odd_vertices(G: SignedGraph, edge_ids: Iterable[int]) -> frozenset[int]:
    """Vertices of odd degree in the subgraph spanned by ``edge_ids`` (a loop adds 2)."""
    odd: set[int] = set()
    for i in edge_ids:
        e = G.edges[i]
        if e.is_loop:
            continue
        odd ^= {e.u}
        odd ^= {e.v}
    return frozenset(odd)


def is_even(G: SignedGraph, edge_ids: Iterable[int]) -> bool:
    return not odd_vertices(G, edge_ids)


def components(G: SignedGraph, within: Optional[Iterable[int]] = None) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    adj = G.adjacency(within)
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for w, _ in adj[x]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(G: SignedGraph, within: Optional[Iterable[int]] = None) -> bool:
    return G.n <= 1 or len(components(G, within)) == 1


def bridges(G: SignedGraph, within: Optional[Iterable[int]] = None) -> frozenset[int]:
    """Edge ids whose removal increases the number of components.

    Iterative Tarjan low-link; the tree edge is skipped by id, so a parallel
    copy of it counts as a back edge.
    """
    adj = G.adjacency(within)
    disc = [-1] * G.n
    low = [0] * G.n
    out: set[int] = set()
    clock = 0
    for root in range(G.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent_edge, it = stack[-1]
            for w, i in it:
                if i == parent_edge:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, i, iter(adj[w])))
                    break
                low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.add(parent_edge)
    return frozenset(out)


def max_bridgeless_edges(G: SignedGraph, within: Optional[Iterable[int]] = None) -> frozenset[int]:
    base = G.all_edges() if within is None else frozenset(within)
    return base - bridges(G, base)


def max_bridgeless_subgraph(G: SignedGraph) -> SignedGraph:
    return G.subgraph(max_bridgeless_edges(G))


def positive_subgraph(G: SignedGraph) -> SignedGraph:
    return G.subgraph(G.positive_edges())


def core_edges(G: SignedGraph) -> frozenset[int]:
    """Edge ids of the maximal bridgeless subgraph of the positive subgraph."""
    return max_bridgeless_edges(G, G.positive_edges())


def is_two_edge_connected(G: SignedGraph) -> bool:
    """Connected with no bridge; loops are ignored (a loop is in no edge cut)."""
    return G.n >= 1 and is_connected(G) and not bridges(G)


@dataclass(frozen=True)
class Switching:
    """The vertex side of a switched edge cut."""

    vertices: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))

    def flips(self, e: Edge) -> bool:
        return (e.u in self.vertices) != (e.v in self.vertices)


def apply_switching(G: SignedGraph, z: Switching | Iterable[int]) -> SignedGraph:
    if not isinstance(z, Switching):
        z = Switching(frozenset(z))
    bad = [v for v in z.vertices if not 0 <= v < G.n]
    if bad:
        raise GraphError(f"switching references missing vertices {sorted(bad)}")
    return G.with_signs(-e.sign if z.flips(e) else e.sign for e in G.edges)


def is_balanced(G: SignedGraph, within: Optional[Iterable[int]] = None) -> bool:
    """True iff no cycle carries an odd number of negative edges.

    Labels vertices along a BFS forest and checks every remaining edge.
    """
    ids = range(G.m) if within is None else within
    adj: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for i in ids:
        e = G.edges[i]
        if e.is_loop:
            if e.sign == NEGATIVE:
                return False
            continue
        bit = 1 if e.sign == NEGATIVE else 0
        adj[e.u].append((e.v, bit))
        adj[e.v].append((e.u, bit))
    label = [-1] * G.n
    for s in range(G.n):
        if label[s] != -1:
            continue
        label[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for w, bit in adj[x]:
                want = label[x] ^ bit
                if label[w] == -1:
                    label[w] = want
                    queue.append(w)
                elif label[w] != want:
                    return False
    return True


def _component_frustration(G: SignedGraph, comp: list[int], incumbent: int) -> tuple[int, list[int]]:
    """Branch and bound over switchings of one component.

    Vertices are decided in increasing id with the smallest vertex pinned
    unswitched and "keep" tried before "switch", so the first optimum met is
    the lexicographically smallest 0/1 switching vector.
    """
    index = {v: k for k, v in enumerate(comp)}
    k = len(comp)
    # nbrs[a] lists (b, bit) for non-loop edges between comp positions a and b.
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    fixed = 0
    for e in G.edges:
        if e.u not in index:
            continue
        bit = 1 if e.sign == NEGATIVE else 0
        if e.is_loop:
            fixed += bit
            continue
        a, b = index[e.u], index[e.v]
        nbrs[a].append((b, bit))
        nbrs[b].append((a, bit))

    label = [0] * k
    # cost[x][a]: negatives on edges from a to decided vertices if a gets label x
    cost = [[0] * k, [0] * k]
    best = [incumbent + 1, None]

    def assign(a: int, x: int, sign: int) -> None:
        for b, bit in nbrs[a]:
            if b > a:
                # edge a-b is negative after switching iff bit ^ x ^ label_b == 1
                cost[0][b] += sign * (bit ^ x)
                cost[1][b] += sign * (bit ^ x ^ 1)

    def search(a: int, partial: int) -> None:
        if a == k:
            if partial < best[0]:
                best[0] = partial
                best[1] = label[:]
            return
        bound = partial + sum(min(cost[0][b], cost[1][b]) for b in range(a, k))
        if bound >= best[0]:
            return
        choices = (0,) if a == 0 else (0, 1)
        for x in choices:
            step = cost[x][a]
            if partial + step >= best[0]:
                continue
            label[a] = x
            assign(a, x, 1)
            search(a + 1, partial + step)
            assign(a, x, -1)
        label[a] = 0

    search(0, fixed)
    if best[1] is None:
        raise AssertionError("frustration search missed the incumbent")
    return best[0], [comp[a] for a in range(k) if best[1][a]]


def _greedy_switching_value(G: SignedGraph, comp: list[int]) -> int:
    """Local search: flip single vertices while that lowers the negative count."""
    members = set(comp)
    side = {v: 0 for v in comp}
    inc: dict[int, list[Edge]] = {v: [] for v in comp}
    for e in G.edges:
        if e.u in members and not e.is_loop:
            inc[e.u].append(e)
            inc[e.v].append(e)

    def neg(e: Edge) -> int:
        flipped = side[e.u] != side[e.v]
        return int((e.sign == NEGATIVE) != flipped)

    improved = True
    while improved:
        improved = False
        for v in comp:
            here = sum(neg(e) for e in inc[v])
            if 2 * here > len(inc[v]):
                side[v] ^= 1
                improved = True
    total = 0
    for e in G.edges:
        if e.u not in members:
            continue
        if e.is_loop:
            total += e.sign == NEGATIVE
        else:
            total += neg(e)
    return total


def negativeness(G: SignedGraph, max_vertices: int = MAX_NEGATIVENESS_VERTICES) -> tuple[int, Switching]:
    """Frustration index and a switching that attains it.

    Exact; components are solved independently and summed.  Components with
    more than ``max_vertices`` vertices are refused.
    """
    total = 0
    switched: list[int] = []
    for comp in components(G):
        if len(comp) > max_vertices:
            raise GraphError(
                f"component with {len(comp)} vertices exceeds the exact negativeness ceiling of {max_vertices}"
            )
        upper = _greedy_switching_value(G, comp)
        value, side = _component_frustration(G, comp, upper)
        total += value
        switched.extend(side)
    return total, Switching(frozenset(switched))


def component_negativeness(G: SignedGraph) -> list[tuple[list[int], int]]:
    out = []
    for comp in components(G):
        sub = induced_subgraph(G, comp)[0]
        out.append((comp, negativeness(sub)[0]))
    return out


def minimize_negatives(G: SignedGraph) -> tuple[SignedGraph, Switching]:
    """Switch ``G`` to a signature with the fewest negative edges."""
    _, z = negativeness(G)
    return apply_switching(G, z), z


def is_negativeness_minimal(G: SignedGraph) -> bool:
    return len(G.negative_edges()) == negativeness(G)[0]


def induced_subgraph(G: SignedGraph, vertices: Iterable[int], skip: Iterable[int] = ()) -> tuple[SignedGraph, list[int], list[int]]:
    """Subgraph induced on ``vertices`` with both vertices and edges renumbered.

    Returns ``(H, vertex_map, edge_map)`` where ``vertex_map[i]`` and
    ``edge_map[j]`` give the ids in ``G`` of vertex ``i`` and edge ``j`` of H.
    """
    vs = sorted(set(vertices))
    index = {v: k for k, v in enumerate(vs)}
    skip = set(skip)
    edge_map = []
    edges = []
    for i, e in enumerate(G.edges):
        if i in skip or e.u not in index or e.v not in index:
            continue
        edge_map.append(i)
        edges.append(Edge(index[e.u], index[e.v], e.sign))
    return SignedGraph(len(vs), tuple(edges)), vs, edge_map


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of the flow-admissibility test.

    ``epsilon`` is the total negativeness; the verdict is decided per
    component, so ``component_epsilons`` carries the values that matter.
    """

    epsilon: int
    offending_bridge: Optional[int]
    verdict: bool
    component_epsilons: tuple[int, ...] = ()
    reason: str = ""


def _side_of(G: SignedGraph, start: int, removed: int) -> list[int]:
    adj = G.adjacency()
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for w, i in adj[x]:
            if i != removed and w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen)


def is_flow_admissible(G: SignedGraph) -> AdmissibilityReport:
    comp_eps = []
    for comp in components(G):
        sub = induced_subgraph(G, comp)[0]
        comp_eps.append(negativeness(sub)[0])
    total = sum(comp_eps)
    if any(eps == 1 for eps in comp_eps):
        return AdmissibilityReport(total, None, False, tuple(comp_eps), "a component has negativeness 1")
    for b in sorted(bridges(G)):
        e = G.edges[b]
        for end in (e.u, e.v):
            side = set(_side_of(G, end, b))
            ids = [i for i, f in enumerate(G.edges) if i != b and f.u in side]
            if is_balanced(G, ids):
                return AdmissibilityReport(
                    total, b, False, tuple(comp_eps), f"bridge {b} separates a balanced side"
                )
    return AdmissibilityReport(total, None, True, tuple(comp_eps), "")


def check_half_negative_cuts(G: SignedGraph, max_vertices: int = 20) -> bool:
    """True iff every edge cut has at most half of its edges negative.

    Enumerates all vertex bipartitions, so it refuses graphs with more than
    ``max_vertices`` vertices.
    """
    if G.n > max_vertices:
        raise GraphError(f"{G.n} vertices exceeds the cut-enumeration ceiling of {max_vertices}")
    plain = [(e.u, e.v, e.sign == NEGATIVE) for e in G.edges if not e.is_loop]
    for mask in range(1, 1 << max(G.n - 1, 0)):
        # vertex n-1 always stays outside the switched side
        total = neg = 0
        for u, v, is_neg in plain:
            if ((mask >> u) & 1) != ((mask >> v) & 1):
                total += 1
                neg += is_neg
        if 2 * neg > total:
            return False
    return True


# ---------------------------------------------------------------------------
# .sg text format


def parse_sg(text: str) -> SignedGraph:
    """Parse the ``.sg`` format: header ``sg <n> <m>`` then ``u v +|-`` lines."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphError("empty .sg input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "sg":
        raise GraphError(f"bad header {lines[0]!r}; expected 'sg <n> <m>'")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError as exc:
        raise GraphError(f"bad header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges but {len(body)} edge lines follow")
    edges = []
    for k, line in enumerate(body):
        parts = line.split()
        if len(parts) != 3 or parts[2] not in ("+", "-"):
            raise GraphError(f"bad edge line {k}: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphError(f"bad edge line {k}: {line!r}") from exc
        edges.append((u, v, POSITIVE if parts[2] == "+" else NEGATIVE))
    return SignedGraph.from_edges(n, edges)


def format_sg(G: SignedGraph) -> str:
    out = [f"sg {G.n} {G.m}"]
    for e in G.edges:
        out.append(f"{e.u} {e.v} {'+' if e.sign == POSITIVE else '-'}")
    return "\n".join(out) + "\n"


def read_sg(path) -> SignedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_sg(fh.read())


def write_sg(G: SignedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_sg(G))
