"""Exact maximum intersecting families on toy instances, via max clique."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .affine import Flat, enumerate_flats
from .counting import count_flats, hm_hypotheses_hold
from .families import (
    FlatFamily,
    ScaleError,
    covering_number,
    family_to_dict,
    flat_mask,
)

DEFAULT_VERTEX_CAP = 5000


@dataclass(frozen=True)
class CompatibilityGraph:
    n: int
    k: int
    q: int
    vertices: tuple
    adj: tuple  # adj[i] is a bitset of the neighbours of vertex i

    def __len__(self):
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)


def build_graph(n: int, k: int, q: int, cap: int = DEFAULT_VERTEX_CAP) -> CompatibilityGraph:
    """Vertices are all k-flats; edges join flats meeting in dimension >= 1."""
    total = count_flats(n, k, q)
    if total > cap:
        raise ScaleError(f"{total} vertices exceed the cap of {cap}")
    vertices = tuple(enumerate_flats(n, k, q))
    masks = [flat_mask(f) for f in vertices]
    adj = [0] * len(vertices)
    for i, mi in enumerate(masks):
        for j in range(i + 1, len(masks)):
            if (mi & masks[j]).bit_count() >= q:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatibilityGraph(n, k, q, vertices, tuple(adj))


@dataclass
class SearchOutcome:
    best: FlatFamily
    size: int
    optimal: bool
    nodes_explored: int
    tau_min: Optional[int] = None

    def to_dict(self) -> dict:
        n, k, q = self.best.n, self.best.k, self.best.q
        return {
            "size": self.size,
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
            "tau_min": self.tau_min,
            "in_hm_parameter_range": hm_hypotheses_hold(n, k, q),
            "note": "" if hm_hypotheses_hold(n, k, q) else "outside the extremal-theorem hypotheses; toy-scale oracle data",
            "family": family_to_dict(self.best),
        }


class _Budget(Exception):
    pass


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def max_family(
    graph: CompatibilityGraph,
    tau_min: Optional[int] = None,
    budget: int = 1_000_000,
    tau_budget: int = 500_000,
) -> SearchOutcome:
    """Largest intersecting family, optionally with covering number >= ``tau_min``.

    Branch and bound over cliques, vertices ordered by descending degree, with a
    greedy colouring bound.  The covering-number constraint is checked when a
    clique cannot be extended further; covering number only grows under
    extension, so checking there loses nothing.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    N = len(graph)
    order = sorted(range(N), key=lambda i: (-graph.degree(i), i))
    pos = {v: p for p, v in enumerate(order)}
    # adjacency in the reordered index space
    radj = [0] * N
    for p, v in enumerate(order):
        for u in _bits(graph.adj[v]):
            radj[p] |= 1 << pos[u]

    best: list = []
    nodes = 0

    def accept(clique: list) -> bool:
        if tau_min is None:
            return True
        fam = FlatFamily(graph.q, graph.n, graph.k, tuple(graph.vertices[order[p]] for p in clique))
        tau = covering_number(fam, tau_budget)
        return tau.value >= tau_min

    def colour_bound(P: int) -> list:
        """Vertices of P with greedy colour numbers, in increasing colour order."""
        out = []
        colour = 0
        uncoloured = P
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~low & ~radj[v]
                uncoloured &= ~low
                out.append((v, colour))
        return out

    def expand(R: list, P: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise _Budget
        if not P:
            if len(R) > len(best) and accept(R):
                best = R[:]
            return
        for v, c in reversed(colour_bound(P)):
            if len(R) + c <= len(best):
                return
            R.append(v)
            expand(R, P & radj[v])
            R.pop()
            P &= ~(1 << v)

    optimal = True
    try:
        expand([], (1 << N) - 1)
    except _Budget:
        optimal = False
    fam = FlatFamily(graph.q, graph.n, graph.k, tuple(graph.vertices[order[p]] for p in best))
    return SearchOutcome(fam, len(best), optimal, nodes, tau_min)


def search(n: int, k: int, q: int, tau_min: Optional[int] = None, budget: int = 1_000_000,
           cap: int = DEFAULT_VERTEX_CAP) -> SearchOutcome:
    return max_family(build_graph(n, k, q, cap), tau_min, budget)
