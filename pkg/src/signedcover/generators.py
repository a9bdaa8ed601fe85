"""Seeded instance generators and fixed fixtures.

All randomness goes through ``numpy.random.default_rng(seed)`` (the PCG64
bit generator), so an :class:`InstanceSpec` names exactly one graph on every
platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from .graph import NEGATIVE, POSITIVE, GraphError, SignedGraph

GENERATORS = ("random-multigraph", "random-cubic", "barbell", "bowtie", "petersen-neg-c5", "figure-eight")


@dataclass(frozen=True)
class InstanceSpec:
    generator: str
    n: int = 0
    m: int = 0
    p_neg: float = 0.3
    seed: int = 0
    params: dict = field(default_factory=dict, hash=False)

    def with_seed(self, seed: int) -> "InstanceSpec":
        return replace(self, seed=seed)

    def to_dict(self) -> dict[str, Any]:
        return {"generator": self.generator, "n": self.n, "m": self.m, "p_neg": self.p_neg,
                "seed": self.seed, "params": dict(self.params)}


def _sign(rng: np.random.Generator, p_neg: float) -> int:
    return NEGATIVE if rng.random() < p_neg else POSITIVE


# ---------------------------------------------------------------------------
# fixtures


def bowtie() -> SignedGraph:
    """Two triangles sharing vertex 2, one negative edge in each."""
    return SignedGraph.from_edges(5, [(0, 1, -1), (1, 2, 1), (2, 0, 1), (2, 3, 1), (3, 4, -1), (4, 2, 1)])


def figure_eight() -> SignedGraph:
    return SignedGraph.from_edges(1, [(0, 0, -1), (0, 0, -1)])


def petersen(negative_outer: bool = True) -> SignedGraph:
    """Petersen graph: outer 5-cycle 0..4 (edges 0-4), spokes (5-9), inner pentagram (10-14)."""
    s = NEGATIVE if negative_outer else POSITIVE
    edges = [(i, (i + 1) % 5, s) for i in range(5)]
    edges += [(i, i + 5, POSITIVE) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5, POSITIVE) for i in range(5)]
    return SignedGraph.from_edges(10, edges)


def loops_joined(path_length: int = 1) -> SignedGraph:
    """Two negative loops at the ends of a positive path."""
    k = path_length
    edges = [(0, 0, NEGATIVE)] + [(i, i + 1, POSITIVE) for i in range(k)] + [(k, k, NEGATIVE)]
    return SignedGraph.from_edges(k + 1, edges)


def path_graph(k: int) -> SignedGraph:
    return SignedGraph.from_edges(k + 1, [(i, i + 1, POSITIVE) for i in range(k)])


def cycle_graph(k: int, sign: int = POSITIVE) -> SignedGraph:
    return SignedGraph.from_edges(k, [(i, (i + 1) % k, sign) for i in range(k)])


def complete_graph(k: int) -> SignedGraph:
    return SignedGraph.from_edges(k, [(a, b, POSITIVE) for a in range(k) for b in range(a + 1, k)])


# ---------------------------------------------------------------------------
# random families


def random_multigraph(
    n: int, m: int, p_neg: float, seed: int, loop_prob: float = 0.1, bridgeless: bool = False
) -> SignedGraph:
    """Connected multigraph with ``m`` edges: a random spanning tree (or Hamiltonian
    cycle when ``bridgeless``) plus uniform extra edges, some of them loops."""
    rng = np.random.default_rng(seed)
    if n < 1:
        raise GraphError("need at least one vertex")
    order = [int(x) for x in rng.permutation(n)]
    edges: list[tuple[int, int, int]] = []
    if bridgeless:
        if n == 1:
            base = []
        elif n == 2:
            base = [(order[0], order[1]), (order[0], order[1])]
        else:
            base = [(order[i], order[(i + 1) % n]) for i in range(n)]
    else:
        base = [(order[int(rng.integers(i))], order[i]) for i in range(1, n)]
    if m < len(base) or (bridgeless and n == 1 and m < 1):
        raise GraphError(f"m = {m} is too small for n = {n}")
    for u, v in base:
        edges.append((u, v, _sign(rng, p_neg)))
    while len(edges) < m:
        if n == 1 or rng.random() < loop_prob:
            v = int(rng.integers(n))
            edges.append((v, v, _sign(rng, p_neg)))
        else:
            u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
            edges.append((u, v, _sign(rng, p_neg)))
    return SignedGraph.from_edges(n, edges)


def random_cubic(n: int, p_neg: float, seed: int, max_tries: int = 1000) -> SignedGraph:
    """Simple connected cubic graph from the configuration model (rejection sampling)."""
    if n < 4 or n % 2:
        raise GraphError("cubic graphs need an even n >= 4")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        points = rng.permutation(np.repeat(np.arange(n), 3))
        pairs = [tuple(sorted((int(points[2 * i]), int(points[2 * i + 1])))) for i in range(3 * n // 2)]
        if any(a == b for a, b in pairs) or len(set(pairs)) != len(pairs):
            continue
        G = SignedGraph.from_edges(n, [(a, b, POSITIVE) for a, b in pairs])
        from .graph import is_connected

        if is_connected(G):
            return G.with_signs(_sign(rng, p_neg) for _ in pairs)
    raise GraphError("no simple connected cubic graph found")


def _blob(rng: np.random.Generator, size: int, extra: int, p_neg: float, offset: int) -> list[tuple[int, int, int]]:
    """Unbalanced 2-edge-connected piece: a cycle (or a loop) plus chords, with an odd negative cycle."""
    if size == 1:
        edges = [(offset, offset, NEGATIVE)]
        for _ in range(extra):
            edges.append((offset, offset, _sign(rng, p_neg)))
        return edges
    ring = [(offset + i, offset + (i + 1) % size) for i in range(size)] if size > 2 else [(offset, offset + 1)] * 2
    signs = [_sign(rng, p_neg) for _ in ring]
    if sum(1 for s in signs if s == NEGATIVE) % 2 == 0:
        k = int(rng.integers(len(signs)))
        signs[k] = -signs[k]
    edges = [(u, v, s) for (u, v), s in zip(ring, signs)]
    for _ in range(extra):
        a, b = (int(x) for x in rng.choice(size, size=2, replace=False))
        edges.append((offset + a, offset + b, _sign(rng, p_neg)))
    return edges


def barbell_graph(n: int, m: int, p_neg: float, seed: int, blobs: int = 2) -> SignedGraph:
    """Unbalanced 2-edge-connected blobs strung on a random tree of bridges.

    ``n`` and ``m`` are targets: the vertices are split among the blobs and
    the bridge paths; edges beyond that become chords inside blobs.  Every
    bridge has an unbalanced blob on both sides, so the result is
    flow-admissible.
    """
    rng = np.random.default_rng(seed)
    if blobs < 2 or n < blobs:
        raise GraphError("need at least two blobs and one vertex per blob")
    sizes = [1] * blobs
    spare = n - blobs
    connectors = [0] * (blobs - 1)
    for _ in range(spare):
        if rng.random() < 0.25:
            connectors[int(rng.integers(blobs - 1))] += 1
        else:
            sizes[int(rng.integers(blobs))] += 1
    base_edges = sum(1 if s == 1 else (2 if s == 2 else s) for s in sizes) + sum(c + 1 for c in connectors)
    extra_total = max(0, m - base_edges)
    extras = [0] * blobs
    for _ in range(extra_total):
        extras[int(rng.integers(blobs))] += 1
    edges: list[tuple[int, int, int]] = []
    starts = []
    offset = 0
    for size, extra in zip(sizes, extras):
        starts.append(offset)
        edges += _blob(rng, size, extra, p_neg, offset)
        offset += size
    for k in range(1, blobs):
        j = int(rng.integers(k))
        a = starts[j] + int(rng.integers(sizes[j]))
        b = starts[k] + int(rng.integers(sizes[k]))
        chain = [a] + list(range(offset, offset + connectors[k - 1])) + [b]
        offset += connectors[k - 1]
        for x, y in zip(chain, chain[1:]):
            edges.append((x, y, _sign(rng, p_neg)))
    return SignedGraph.from_edges(offset, edges)


def gen(spec: InstanceSpec) -> SignedGraph:
    """The instance named by ``spec``; deterministic in (spec, seed)."""
    p = dict(spec.params)
    name = spec.generator
    if not 0.0 <= spec.p_neg <= 1.0:
        raise GraphError("p_neg must lie in [0, 1]")
    if name == "random-multigraph":
        return random_multigraph(spec.n, spec.m, spec.p_neg, spec.seed,
                                 loop_prob=float(p.get("loop_prob", 0.1)),
                                 bridgeless=bool(p.get("bridgeless", False)))
    if name == "random-cubic":
        return random_cubic(spec.n, spec.p_neg, spec.seed)
    if name == "barbell":
        return barbell_graph(spec.n, spec.m, spec.p_neg, spec.seed, blobs=int(p.get("blobs", 2)))
    if name == "bowtie":
        return bowtie()
    if name == "petersen-neg-c5":
        return petersen(True)
    if name == "figure-eight":
        return figure_eight()
    raise GraphError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
