"""Undirected simple graphs on dense vertex indices, plus chordality tools."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``.
    """

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            es.add((u, v) if u < v else (v, u))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges = frozenset(es)
        self.adj = tuple(frozenset(a) for a in adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class EliminationOrder:
    """A vertex ordering; a perfect elimination order when certified so."""

    order: tuple[int, ...]

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    peo: EliminationOrder | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.chordal

    def __iter__(self):
        yield self.chordal
        yield self.peo if self.chordal else self.witness


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    return Graph(n, edge_list)


def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.adj), default=0)


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[set[int]]:
    """Components ordered by their smallest vertex.

    With ``within`` given, components of the induced subgraph on that set.
    """
    allowed = set(range(g.n)) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``(G[s], old_to_new)``; new indices follow the sorted order of ``s``."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} not in graph with n={g.n}")
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(verts), edges), index


def is_clique(g: Graph, vs: Iterable[int]) -> bool:
    vs = list(vs)
    for i, u in enumerate(vs):
        au = g.adj[u]
        for v in vs[i + 1:]:
            if v not in au:
                return False
    return True


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visit order; ties go to the smallest index."""
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    # buckets keyed by weight; weights only grow so a moving max pointer suffices
    buckets: list[set[int]] = [set(range(g.n))] + [set() for _ in range(g.n)]
    top = 0
    for _ in range(g.n):
        while top > 0 and not buckets[top]:
            top -= 1
        v = min(buckets[top])
        buckets[top].discard(v)
        visited[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not visited[w]:
                buckets[weight[w]].discard(w)
                weight[w] += 1
                buckets[weight[w]].add(w)
                if weight[w] > top:
                    top = weight[w]
    return order


def peo_violation(g: Graph, order: Iterable[int]) -> tuple[int, int, int] | None:
    """First ``(v, x, y)`` with x, y later non-adjacent neighbours of v, else None."""
    order = list(order)
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != g.n or set(pos) != set(range(g.n)):
        raise InputError("elimination order is not a permutation of the vertices")
    for v in order:
        later = sorted((w for w in g.adj[v] if pos[w] > pos[v]), key=pos.__getitem__)
        for i, x in enumerate(later):
            for y in later[i + 1:]:
                if y not in g.adj[x]:
                    return v, x, y
    return None


def is_peo(g: Graph, order: Iterable[int]) -> bool:
    return peo_violation(g, order) is None


def _chordless_cycle_through(g: Graph, v: int, x: int, y: int) -> tuple[int, ...] | None:
    # shortest x..y path whose inner vertices avoid N[v]
    blocked = set(g.adj[v]) | {v}
    blocked.discard(x)
    blocked.discard(y)
    prev = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            break
        for w in sorted(g.adj[u]):
            if w not in prev and w not in blocked:
                if u == x and w == y:
                    continue
                prev[w] = u
                queue.append(w)
    if y not in prev:
        return None
    path = []
    u = y
    while u is not None:
        path.append(u)
        u = prev[u]
    path.reverse()
    return (v, *path)


def find_chordless_cycle(g: Graph, hint: tuple[int, int, int] | None = None) -> tuple[int, ...] | None:
    """A chordless cycle of length >= 4, or None if the graph is chordal."""
    if hint is not None:
        cyc = _chordless_cycle_through(g, *hint)
        if cyc is not None:
            return cyc
    for v in range(g.n):
        nb = sorted(g.adj[v])
        for i, x in enumerate(nb):
            for y in nb[i + 1:]:
                if y in g.adj[x]:
                    continue
                cyc = _chordless_cycle_through(g, v, x, y)
                if cyc is not None:
                    return cyc
    return None


def is_chordal(g: Graph) -> ChordalityResult:
    """Recognise chordal graphs.

    Returns a result that unpacks as ``(True, peo)`` or ``(False, cycle)``,
    where ``cycle`` is a chordless cycle of length at least 4.
    """
    peo = list(reversed(mcs_order(g)))
    bad = peo_violation(g, peo)
    if bad is None:
        return ChordalityResult(True, peo=EliminationOrder(tuple(peo)))
    return ChordalityResult(False, witness=find_chordless_cycle(g, bad))


def simplicial_vertices(g: Graph) -> set[int]:
    return {v for v in range(g.n) if is_clique(g, g.adj[v])}


def has_clique(g: Graph, size: int) -> bool:
    """Exhaustive test for a clique on ``size`` vertices."""
    if size <= 1:
        return g.n >= size

    def extend(cands: list[int], need: int) -> bool:
        if need == 0:
            return True
        for i, v in enumerate(cands):
            if len(cands) - i < need:
                return False
            if extend([w for w in cands[i + 1:] if w in g.adj[v]], need - 1):
                return True
        return False

    return extend(list(range(g.n)), size)
