"""Recursive construction of bounded-width tree-partitions.

Given a tree decomposition of width k and a degree bound Delta, the
construction returns a tree-partition of width at most
gamma (k+1)(3 gamma Delta - 1) with gamma = 1 + sqrt 2. It works on an
anchor set S whose size lies in the window [(gamma+1)(k+1), 3(gamma+1)(k+1)Delta]
and guarantees that S ends up in one bag of at most alpha|S| - gamma(k+1)
vertices, alpha = 1 + 1/sqrt 2. Four cases:

1. fewer than (gamma+1)(k+1) vertices: one bag;
2. fewer than (gamma+1)(k+1) vertices outside S: bags S and V - S;
3. |S| <= 3(gamma+1)(k+1): recurse on G - S anchored at the neighbourhood
   of S (padded if short), then hang S off that bag as a leaf;
4. otherwise split along a balanced separator Y into edge-disjoint G1, G2,
   recurse on each with anchor (S cap V(Gi)) + Y and unite the anchor bags.

All size thresholds are compared in exact Q(sqrt 2) arithmetic; every node
re-checks its own postconditions and raises ContractError on failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .decomp import TreeDecomposition, restrict, separate, verify_tree_decomposition
from .errors import ContractError, InputError
from .graph import Graph, connected_components, max_degree
from .partition import TreePartition
from .quadnum import (
    anchor_bag_limit,
    anchor_max,
    anchor_min,
    case3_limit,
    lemma3_width_bound,
)


@dataclass(frozen=True)
class AnchorCall:
    graph: Graph
    td: TreeDecomposition
    anchor: frozenset[int] | None
    k: int
    delta: int


@dataclass(frozen=True)
class AnchoredPartition:
    partition: TreePartition
    anchor_bag: int


@dataclass
class ConstructStats:
    cases: dict[int, int] = field(default_factory=lambda: {1: 0, 2: 0, 3: 0, 4: 0})
    nodes: int = 0
    max_depth: int = 0


class _Builder:
    def __init__(self, k: int, delta: int, trace: Callable[[dict], None] | None = None):
        if k < 1 or delta < 1:
            raise InputError(f"need k >= 1 and delta >= 1, got k={k}, delta={delta}")
        self.k = k
        self.delta = delta
        self.lo = anchor_min(k)
        self.hi = anchor_max(k, delta)
        self.case3 = case3_limit(k)
        self.width_cap = math.ceil(lemma3_width_bound(k, delta))
        self.lo_int = math.ceil(self.lo)
        self.trace = trace
        self.stats = ConstructStats()

    def _emit(self, **rec):
        if self.trace is not None:
            self.trace(rec)

    def run(self, verts: frozenset[int], adj: dict[int, set[int]],
            bags: list[frozenset[int]], tree_edges: list[tuple[int, int]],
            s: frozenset[int], depth: int = 0) -> tuple[list[set[int]], int]:
        """Return ``(bags, anchor_index)`` for the subgraph ``(verts, adj)``."""
        st = self.stats
        st.nodes += 1
        st.max_depth = max(st.max_depth, depth)
        nv, ns = len(verts), len(s)
        if not s <= verts:
            raise ContractError("anchor is not inside the vertex set")
        if not (self.lo <= ns <= self.hi):
            raise ContractError(f"anchor size {ns} outside [{float(self.lo):.3f}, {float(self.hi):.3f}]")
        if nv < self.lo:
            raise ContractError("case 1 cannot occur with an anchor present")

        rest = verts - s
        if len(rest) < self.lo:
            case = 2
            out = [set(s)] + ([set(rest)] if rest else [])
            anchor = 0
        elif ns <= self.case3:
            case = 3
            out, anchor = self._case3(verts, adj, bags, tree_edges, s, rest, depth)
        else:
            if ns == self.case3:
                raise ContractError("anchor size hit the irrational case boundary")
            case = 4
            out, anchor = self._case4(verts, adj, bags, tree_edges, s, depth)

        st.cases[case] += 1
        abag = out[anchor]
        if not s <= abag:
            raise ContractError(f"case {case}: anchor bag misses part of S")
        if len(abag) > anchor_bag_limit(ns, self.k):
            raise ContractError(f"case {case}: anchor bag of size {len(abag)} exceeds alpha|S| - gamma(k+1) for |S|={ns}")
        big = max(len(b) for b in out)
        if big > self.width_cap:
            raise ContractError(f"case {case}: bag of size {big} exceeds width cap {self.width_cap}")
        self._emit(depth=depth, case=case, V=nv, S=ns, anchor_bag=len(abag),
                   bags=len(out), max_bag=big)
        return out, anchor

    def _case3(self, verts, adj, bags, tree_edges, s, rest, depth):
        nbr = set()
        for v in s:
            nbr |= adj[v]
        nbr -= s
        if len(nbr) < self.lo:
            for v in sorted(rest - nbr):
                if len(nbr) >= self.lo_int:
                    break
                nbr.add(v)
        sub_adj = {v: adj[v] - s for v in rest}
        sub_td = restrict(bags, tree_edges, set(rest))
        if not len(rest) < len(verts):
            raise ContractError("case 3 recursion does not shrink the graph")
        sub_bags, sub_anchor = self.run(frozenset(rest), sub_adj, list(sub_td.bags),
                                        list(sub_td.tree_edges), frozenset(nbr), depth + 1)
        # S becomes a leaf hanging off the bag that holds all its outside neighbours
        return sub_bags + [set(s)], len(sub_bags)

    def _case4(self, verts, adj, bags, tree_edges, s, depth):
        sep = separate(adj, verts, bags, tree_edges, s)
        y = sep.y
        if len(y) > self.k + 1:
            raise ContractError(f"separator of size {len(y)} exceeds k+1")
        free = len(s - y)
        for side in (sep.v1, sep.v2):
            if 3 * len(s - side) > 2 * free:
                raise ContractError("separator is not two-thirds balanced on S")
        results = []
        for i, side in ((1, sep.v1), (2, sep.v2)):
            p_i = len((s & side) - y)
            if p_i <= 0:
                raise ContractError(f"case 4: side {i} owns no private anchor vertex")
            if not len(side) < len(verts):
                raise ContractError("case 4 recursion does not shrink the graph")
            sub_adj = {v: set() for v in side}
            for (a, b), e_side in sep.edge_side.items():
                if e_side == i:
                    sub_adj[a].add(b)
                    sub_adj[b].add(a)
            sub_td = restrict(bags, tree_edges, set(side))
            s_i = (s & side) | y
            results.append(self.run(frozenset(side), sub_adj, list(sub_td.bags),
                                    list(sub_td.tree_edges), frozenset(s_i), depth + 1))
        (b1, a1), (b2, a2) = results
        merged = b1[a1] | b2[a2]
        if len(merged) != len(b1[a1]) + len(b2[a2]) - len(y):
            raise ContractError("anchor bags of the two sides overlap outside Y")
        out = [merged]
        out += [b for j, b in enumerate(b1) if j != a1]
        out += [b for j, b in enumerate(b2) if j != a2]
        return out, 0


def _check_inputs(g: Graph, td: TreeDecomposition, delta: int) -> int:
    check = verify_tree_decomposition(g, td)
    if not check:
        raise InputError(f"tree decomposition is invalid: {check.message}")
    if delta < 1:
        raise InputError(f"delta must be at least 1, got {delta}")
    if delta < max_degree(g):
        raise InputError(f"delta={delta} is below the actual maximum degree {max_degree(g)}")
    return max(td.width, 1)


def anchored_construct(call: AnchorCall, trace: Callable[[dict], None] | None = None) -> AnchoredPartition:
    g = call.graph
    _check_inputs(g, call.td, call.delta)
    if call.td.width > call.k:
        raise InputError(f"decomposition width {call.td.width} exceeds k={call.k}")
    builder = _Builder(call.k, call.delta, trace)
    verts = frozenset(range(g.n))
    if call.anchor is None:
        if g.n < builder.lo:
            return AnchoredPartition(TreePartition([0] * g.n), 0)
        s = frozenset(range(min(builder.lo_int, g.n)))
    else:
        s = frozenset(call.anchor)
    adj = {v: set(g.adj[v]) for v in verts}
    out, anchor = builder.run(verts, adj, list(call.td.bags), list(call.td.tree_edges), s)
    return AnchoredPartition(TreePartition.from_bags(g.n, out), anchor)


def construct_tree_partition(g: Graph, td: TreeDecomposition, delta: int,
                             trace: Callable[[dict], None] | None = None,
                             stats: ConstructStats | None = None) -> TreePartition:
    """Tree-partition of width at most ceil(gamma (k+1)(3 gamma delta - 1)).

    ``k`` is the width of ``td`` (at least 1). Each connected component is
    built separately and the results are placed side by side.
    """
    k = _check_inputs(g, td, delta)
    builder = _Builder(k, delta, trace)
    all_bags: list[set[int]] = []
    for comp in connected_components(g):
        if len(comp) < builder.lo:
            builder.stats.cases[1] += 1
            builder._emit(depth=0, case=1, V=len(comp), S=0, anchor_bag=len(comp),
                          bags=1, max_bag=len(comp))
            all_bags.append(set(comp))
            continue
        sub = restrict(td.bags, td.tree_edges, comp)
        s = frozenset(sorted(comp)[:builder.lo_int])
        adj = {v: set(g.adj[v]) for v in comp}
        out, _ = builder.run(frozenset(comp), adj, list(sub.bags), list(sub.tree_edges), s)
        all_bags.extend(out)
    if stats is not None:
        for case, count in builder.stats.cases.items():
            stats.cases[case] = stats.cases.get(case, 0) + count
        stats.nodes += builder.stats.nodes
        stats.max_depth = max(stats.max_depth, builder.stats.max_depth)
    return TreePartition.from_bags(g.n, all_bags)
