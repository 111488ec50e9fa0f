"""Tree-partitions: quotient graphs, verification, connected refinement and
an exact tree-partition-width oracle."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import _search_py
from .decomp import Ok, Violation, _tree_edge_cycle
from .errors import CapacityError, InputError
from .graph import Graph, connected_components, is_chordal, is_connected

try:
    from . import _search_ext
except ImportError:  # pragma: no cover - depends on the build
    _search_ext = None

#: kernels available in this build, fastest first
KERNELS = {"python": _search_py.search_width}
if _search_ext is not None:
    KERNELS["cython"] = _search_ext.search_width
DEFAULT_KERNEL = "cython" if "cython" in KERNELS else "python"


class TreePartition:
    """An assignment of every vertex to exactly one bag.

    Bag ids are ``0..len(bags)-1``; construct from a per-vertex label list or
    from a list of bags.
    """

    __slots__ = ("bag_of", "bags")

    def __init__(self, bag_of: Sequence[int]):
        labels = list(bag_of)
        ids = sorted(set(labels))
        if ids != list(range(len(ids))):
            remap = {b: i for i, b in enumerate(ids)}
            labels = [remap[b] for b in labels]
        bags: list[set[int]] = [set() for _ in ids]
        for v, b in enumerate(labels):
            bags[b].add(v)
        self.bag_of = tuple(labels)
        self.bags = tuple(frozenset(b) for b in bags)

    @classmethod
    def from_bags(cls, n: int, bags: Iterable[Iterable[int]]) -> TreePartition:
        labels = [-1] * n
        for i, bag in enumerate(bags):
            for v in bag:
                if not 0 <= v < n:
                    raise InputError(f"vertex {v} out of range for n={n}")
                if labels[v] != -1:
                    raise InputError(f"vertex {v} is in two bags")
                labels[v] = i
        missing = [v for v in range(n) if labels[v] == -1]
        if missing:
            raise InputError(f"vertices {missing[:5]} are in no bag")
        return cls(labels)

    @property
    def n(self) -> int:
        return len(self.bag_of)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def __len__(self):
        return len(self.bags)

    def __eq__(self, other):
        if not isinstance(other, TreePartition):
            return NotImplemented
        return self.bag_of == other.bag_of

    def __hash__(self):
        return hash(self.bag_of)

    def __repr__(self):
        return f"TreePartition(bags={len(self.bags)}, width={self.width})"

    def canonical(self) -> TreePartition:
        """Relabel bags in order of their smallest vertex."""
        order = sorted(range(len(self.bags)), key=lambda i: min(self.bags[i]))
        return TreePartition.from_bags(self.n, [self.bags[i] for i in order])


def _labels(g: Graph, p) -> list[int]:
    if isinstance(p, TreePartition):
        labels = list(p.bag_of)
    elif isinstance(p, Mapping):
        labels = [p.get(v, -1) for v in range(g.n)]
    else:
        p = list(p)
        if p and not isinstance(p[0], int):
            return list(TreePartition.from_bags(g.n, p).bag_of)
        labels = p
    if len(labels) != g.n or any(b is None or b < 0 for b in labels):
        raise InputError("partition does not assign every vertex to a bag")
    return labels


def quotient_graph(g: Graph, p) -> Graph:
    """The pattern of a partition: bags as vertices, crossing edges collapsed.

    ``p`` may be a TreePartition, a per-vertex label list, a vertex->bag
    mapping, or a list of bags.
    """
    tp = TreePartition(_labels(g, p))
    lab = tp.bag_of
    edges = {(lab[u], lab[v]) for u, v in g.edges if lab[u] != lab[v]}
    return Graph(len(tp.bags), edges)


def verify_tree_partition(g: Graph, p) -> Ok | Violation:
    try:
        tp = p if isinstance(p, TreePartition) else TreePartition(_labels(g, p))
    except InputError as exc:
        return Violation("partition", (), str(exc))
    if tp.n != g.n:
        return Violation("partition", (), f"partition covers {tp.n} vertices, graph has {g.n}")
    q = quotient_graph(g, tp)
    cyc = _tree_edge_cycle(q.n, q.sorted_edges())
    if cyc is not None:
        return Violation("forest", cyc, f"quotient contains the cycle {list(cyc)}")
    return Ok(tp.width)


def refine_connected(g: Graph, p) -> TreePartition:
    """Split every bag into the connected components of the subgraph it induces.

    For chordal graphs the result is again a tree-partition, and for any
    independent set S of simplicial vertices each bag is either a single
    vertex of S or stays connected after removing S.
    """
    if not is_chordal(g):
        raise InputError("refine_connected requires a chordal graph")
    tp = p if isinstance(p, TreePartition) else TreePartition(_labels(g, p))
    if not verify_tree_partition(g, tp):
        raise InputError("input is not a tree-partition of the graph")
    new_bags = []
    for bag in tp.bags:
        new_bags.extend(connected_components(g, bag))
    return TreePartition.from_bags(g.n, new_bags)


def layered_partition(g: Graph, root: int = 0) -> TreePartition:
    """BFS layers from ``root``; the pattern of a connected graph is a path."""
    if g.n == 0:
        return TreePartition([])
    dist = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    if min(dist) < 0:
        raise InputError("layered partition needs a connected graph")
    return TreePartition(dist)


def search_order(g: Graph) -> list[int]:
    """BFS order from vertex 0, neighbours by increasing index."""
    order = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g.adj[u]):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


@dataclass(frozen=True)
class ExactResult:
    """Outcome of the exact search.

    When ``complete`` is false, ``lower_bound`` is certified (every smaller
    width was refuted or ruled out analytically) but ``width`` is only the
    best witness found.
    """

    width: int
    partition: TreePartition
    complete: bool
    lower_bound: int
    nodes: int = 0

    def __iter__(self):
        yield self.width
        yield self.partition


def search_at_width(g: Graph, width: int, *, connected: bool = False,
                    node_limit: int = 0, deadline: float = 0.0,
                    kernel: str | None = None):
    """Single fixed-width search; returns ``(status, TreePartition | None, nodes)``."""
    fn = KERNELS[kernel or DEFAULT_KERNEL]
    order = search_order(g)
    pos = {v: i for i, v in enumerate(order)}
    prev_nbrs = [sorted(pos[w] for w in g.adj[v] if pos[w] < pos[v]) for v in order]
    all_nbrs = [sorted(pos[w] for w in g.adj[v]) for v in order]
    close_at = [max([i] + all_nbrs[i]) for i in range(g.n)]
    status, labels, nodes = fn(g.n, prev_nbrs, all_nbrs, close_at, width,
                               connected, node_limit, deadline)
    if status != _search_py.FOUND:
        return status, None, nodes
    bag_of = [0] * g.n
    for i, v in enumerate(order):
        bag_of[v] = labels[i]
    return status, TreePartition(bag_of).canonical(), nodes


def exact_tpw(g: Graph, *, max_n: int = 12, time_budget: float | None = None,
              node_budget: int | None = None, chordal_pruning: bool = False,
              lower: int | None = None, kernel: str | None = None) -> ExactResult:
    """Minimum width over all tree-partitions of a connected graph.

    Widths are tried upward from a tree-width based lower bound. Graphs above
    ``max_n`` are only searched when a time or node budget is given; running
    out of budget yields an incomplete result whose lower bound is the first
    width not yet refuted.
    """
    from .decomp import EXACT_TW_MAX_N, treewidth_exact

    if not is_connected(g):
        raise InputError("exact_tpw needs a connected graph; solve each component separately")
    if g.n > max_n and time_budget is None and node_budget is None:
        raise CapacityError(f"exact search is capped at max_n={max_n} without a budget (n={g.n})")
    if g.n == 0:
        return ExactResult(0, TreePartition([]), True, 0)
    connected = False
    if chordal_pruning:
        connected = bool(is_chordal(g))
    lb = 1
    if is_chordal(g) or g.n <= EXACT_TW_MAX_N:
        tw, _ = treewidth_exact(g)
        lb = max(lb, -(-(tw + 1) // 2))
    if lower is not None:
        lb = max(lb, lower)
    best = layered_partition(g)
    deadline = time.monotonic() + time_budget if time_budget is not None else 0.0
    nodes_left = node_budget
    total_nodes = 0
    w = lb
    while w < best.width:
        limit = 0 if nodes_left is None else max(nodes_left, 1)
        status, tp, nodes = search_at_width(g, w, connected=connected, node_limit=limit,
                                            deadline=deadline, kernel=kernel)
        total_nodes += nodes
        if nodes_left is not None:
            nodes_left -= nodes
        if status == _search_py.FOUND:
            return ExactResult(tp.width, tp, True, tp.width, total_nodes)
        if status == _search_py.BUDGET:
            return ExactResult(best.width, best, False, w, total_nodes)
        w += 1
        if nodes_left is not None and nodes_left <= 0 and w < best.width:
            return ExactResult(best.width, best, False, w, total_nodes)
    return ExactResult(best.width, best, True, best.width, total_nodes)
