"""Tree decompositions: verification, construction and balanced separators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import CapacityError, InputError
from .graph import EliminationOrder, Graph, is_chordal, peo_violation

#: hard cap for the subset dynamic program
EXACT_TW_MAX_N = 16


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    def __init__(self, bags: Iterable[Iterable[int]], tree_edges: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))
        te = tuple(sorted((min(a, b), max(a, b)) for a, b in tree_edges))
        object.__setattr__(self, "tree_edges", te)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        for row in adj:
            row.sort()
        return adj


@dataclass(frozen=True)
class Violation:
    """A failed structural check: which axiom, and a witness for it."""

    axiom: str
    witness: tuple = ()
    message: str = ""

    ok = False

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Ok:
    width: int

    ok = True

    def __bool__(self):
        return True


def _tree_edge_cycle(num_nodes: int, edges: Iterable[tuple[int, int]]) -> tuple | None:
    """Return a cycle (as a node tuple) if the edge set is not a forest."""
    parent = list(range(num_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj: dict[int, list[int]] = {}
    for a, b in edges:
        if a == b:
            return (a,)
        ra, rb = find(a), find(b)
        if ra == rb:
            # recover the forest path a..b
            prev = {a: None}
            queue = deque([a])
            while queue:
                u = queue.popleft()
                for w in adj.get(u, ()):
                    if w not in prev:
                        prev[w] = u
                        queue.append(w)
            path, u = [], b
            while u is not None:
                path.append(u)
                u = prev[u]
            return tuple(reversed(path))
        parent[ra] = rb
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    return None


def verify_tree_decomposition(g: Graph, td: TreeDecomposition) -> Ok | Violation:
    nb = len(td.bags)
    for a, b in td.tree_edges:
        if not (0 <= a < nb and 0 <= b < nb):
            return Violation("tree", (a, b), f"tree edge ({a}, {b}) references a missing bag")
    if len(set(td.tree_edges)) != len(td.tree_edges):
        return Violation("tree", (), "duplicate tree edge")
    cyc = _tree_edge_cycle(nb, td.tree_edges)
    if cyc is not None:
        return Violation("tree", cyc, "bag graph contains a cycle")
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return Violation("vertex", (i, v), f"bag {i} holds unknown vertex {v}")
    holders: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders[v].append(i)
    for v in range(g.n):
        if not holders[v]:
            return Violation("vertex", (v,), f"vertex {v} is in no bag")
    for u, v in sorted(g.edges):
        if not any(v in td.bags[i] for i in holders[u]):
            return Violation("edge", (u, v), f"edge not covered: ({u}, {v})")
    tadj = td.tree_adjacency()
    for v in range(g.n):
        hs = set(holders[v])
        start = holders[v][0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in tadj[x]:
                if y in hs and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(hs):
            return Violation("subtree", (v,), f"bags containing vertex {v} are not connected")
    return Ok(td.width)


def compress(bags: list[set[int]], edges: list[tuple[int, int]]) -> TreeDecomposition:
    """Contract empty bags and bags contained in a tree neighbour.

    Both contractions keep all three decomposition axioms.
    """
    bags = [set(b) for b in bags]
    alive = [True] * len(bags)
    adj: list[set[int]] = [set() for _ in bags]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    changed = True
    while changed:
        changed = False
        for i in range(len(bags)):
            if not alive[i]:
                continue
            target = None
            for j in sorted(adj[i]):
                if bags[i] <= bags[j]:
                    target = j
                    break
            if target is None and not bags[i] and not adj[i] and sum(alive) > 1:
                alive[i] = False
                changed = True
                continue
            if target is None:
                continue
            for j in adj[i]:
                adj[j].discard(i)
                if j != target:
                    adj[j].add(target)
                    adj[target].add(j)
            adj[i] = set()
            alive[i] = False
            changed = True
    keep = [i for i in range(len(bags)) if alive[i]]
    index = {old: new for new, old in enumerate(keep)}
    new_edges = {(index[a], index[b]) for a in keep for b in adj[a] if a < b}
    return TreeDecomposition([bags[i] for i in keep], sorted(new_edges))


def _link_forest(num_nodes: int, edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Join the components of a bag forest into one tree."""
    parent = list(range(num_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    roots = sorted({find(i) for i in range(num_nodes)})
    extra = [(roots[i], roots[i + 1]) for i in range(len(roots) - 1)]
    return list(edges) + extra


def decomposition_from_order(g: Graph, order: Iterable[int]) -> TreeDecomposition:
    """Elimination-game decomposition: one bag per vertex, then compressed."""
    order = list(order)
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(a) for a in g.adj]
    bags: list[set[int]] = []
    later_of: list[set[int]] = []
    for v in order:
        later = {w for w in nbrs[v] if pos[w] > pos[v]}
        for x in later:
            nbrs[x] |= later - {x}
        bags.append({v} | later)
        later_of.append(later)
    edges = []
    for i, v in enumerate(order):
        if later_of[i]:
            nxt = min(later_of[i], key=pos.__getitem__)
            edges.append((i, pos[nxt]))
    if not bags:
        return TreeDecomposition([], [])
    edges = _link_forest(len(bags), edges)
    return compress(bags, edges)


def clique_tree_from_peo(g: Graph, peo: EliminationOrder | Iterable[int]) -> TreeDecomposition:
    order = peo.order if isinstance(peo, EliminationOrder) else tuple(peo)
    if peo_violation(g, order) is not None:
        raise InputError("supplied order is not a perfect elimination order")
    return decomposition_from_order(g, order)


def _mask_reach(adj_mask: list[int], inside: int, v: int) -> int:
    """Vertices outside ``inside`` reachable from v through ``inside``."""
    reach = adj_mask[v]
    frontier = reach & inside
    seen = frontier
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        u = low.bit_length() - 1
        new = adj_mask[u] & ~seen & ~(1 << v)
        reach |= new
        new_in = new & inside
        seen |= new_in
        frontier |= new_in
    return reach & ~inside & ~(1 << v)


def _exact_order(g: Graph, upper: int) -> tuple[int, list[int]] | None:
    """Elimination order of width < upper, by level-wise subset DP; None if none."""
    n = g.n
    adj_mask = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    # level i holds eliminated sets of size i mapped to (cost, predecessor vertex)
    level: dict[int, tuple[int, int]] = {0: (-1, -1)}
    history = [level]
    for _ in range(n):
        nxt: dict[int, tuple[int, int]] = {}
        for s in sorted(level):
            cost = level[s][0]
            rest = ((1 << n) - 1) & ~s
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                q = bin(_mask_reach(adj_mask, s, v)).count("1")
                c = max(cost, q)
                if c >= upper:
                    continue
                t = s | low
                old = nxt.get(t)
                if old is None or c < old[0]:
                    nxt[t] = (c, v)
        if not nxt:
            return None
        level = nxt
        history.append(level)
    full = (1 << n) - 1
    width = level[full][0]
    order = []
    s = full
    for lvl in range(n, 0, -1):
        v = history[lvl][s][1]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return max(width, 0), order


def treewidth_exact(g: Graph) -> tuple[int, TreeDecomposition]:
    chordal = is_chordal(g)
    if chordal:
        td = clique_tree_from_peo(g, chordal.peo)
        return td.width, td
    if g.n > EXACT_TW_MAX_N:
        raise CapacityError(
            f"exact tree-width needs a chordal graph or n <= {EXACT_TW_MAX_N}, got n={g.n}")
    heur = treewidth_heuristic(g)
    found = _exact_order(g, heur.width)
    if found is None:
        return heur.width, heur
    _, order = found
    td = decomposition_from_order(g, order)
    return td.width, td


def min_fill_order(g: Graph) -> list[int]:
    nbrs = [set(a) for a in g.adj]
    remaining = set(range(g.n))
    order = []
    while remaining:
        best, best_key = None, None
        for v in sorted(remaining):
            nb = sorted(nbrs[v])
            fill = 0
            for i, x in enumerate(nb):
                for y in nb[i + 1:]:
                    if y not in nbrs[x]:
                        fill += 1
            key = (fill, len(nb))
            if best_key is None or key < best_key:
                best, best_key = v, key
        v = best
        nb = nbrs[v]
        for x in nb:
            nbrs[x] |= nb - {x}
            nbrs[x].discard(v)
        remaining.discard(v)
        order.append(v)
    return order


def treewidth_heuristic(g: Graph) -> TreeDecomposition:
    """Min-fill decomposition; exact clique tree for chordal input."""
    chordal = is_chordal(g)
    if chordal:
        return clique_tree_from_peo(g, chordal.peo)
    return decomposition_from_order(g, min_fill_order(g))


@dataclass(frozen=True)
class SeparatorResult:
    y: frozenset[int]
    v1: frozenset[int]
    v2: frozenset[int]
    edge_side: Mapping[tuple[int, int], int] = field(repr=False)

    def side_edges(self, side: int) -> list[tuple[int, int]]:
        return sorted(e for e, s in self.edge_side.items() if s == side)


def _pieces(adj: Mapping[int, Iterable[int]], vertices: Iterable[int], removed: set[int]):
    seen = set(removed)
    out = []
    for s in sorted(vertices):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        i = 0
        while i < len(comp):
            for w in adj[comp[i]]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
            i += 1
        out.append(frozenset(comp))
    return out


def _split(pieces, s: set[int]):
    """Greedy two-way split of pieces by S-weight; returns side lists and weights."""
    weighted = sorted(pieces, key=lambda p: (-len(p & s), min(p)))
    sides = ([], [])
    load = [0, 0]
    for p in weighted:
        i = 0 if load[0] <= load[1] else 1
        sides[i].append(p)
        load[i] += len(p & s)
    return sides, load


def _balanced(pieces, s: set[int], y: frozenset[int]) -> bool:
    total = len(s - y)
    if total == 0:
        return True
    return 3 * max((len(p & s) for p in pieces), default=0) <= 2 * total


def separate(adj: Mapping[int, Iterable[int]], vertices: Iterable[int],
             bags: list[frozenset[int]], tree_edges: Iterable[tuple[int, int]],
             s: Iterable[int]) -> SeparatorResult:
    """Balanced separator on an adjacency mapping (vertex ids need not be dense).

    Candidate separators are tried in a fixed order: whole bags by index with
    every piece holding at most half of S - X, then whole bags at the looser
    two-thirds limit, then intersections of adjacent bags, then proper subsets
    of bags by decreasing size.
    """
    vertices = sorted(vertices)
    s = set(s)
    tree_edges = list(tree_edges)
    candidates: list[frozenset[int]] = []
    # strict centroid bags first, then relaxed ones
    scored = []
    for x in bags:
        pieces = _pieces(adj, vertices, set(x))
        total = len(s - x)
        heaviest = max((len(p & s) for p in pieces), default=0)
        scored.append((x, pieces, total, heaviest))
    for x, pieces, total, heaviest in scored:
        if 2 * heaviest <= total:
            return _assemble(adj, vertices, x, pieces, s)
    for x, pieces, total, heaviest in scored:
        if 3 * heaviest <= 2 * total:
            return _assemble(adj, vertices, x, pieces, s)
    for a, b in sorted(tree_edges):
        candidates.append(bags[a] & bags[b])
    from itertools import combinations
    for x in bags:
        xs = sorted(x)
        for r in range(len(xs) - 1, -1, -1):
            for sub in combinations(xs, r):
                candidates.append(frozenset(sub))
    tried = set()
    for y in candidates:
        if y in tried:
            continue
        tried.add(y)
        pieces = _pieces(adj, vertices, set(y))
        if _balanced(pieces, s, y):
            return _assemble(adj, vertices, y, pieces, s)
    raise RuntimeError("no balanced separator found among bag subsets")


def _assemble(adj, vertices, y: frozenset[int], pieces, s: set[int]) -> SeparatorResult:
    (side1, side2), _ = _split(pieces, s)
    v1 = set(y).union(*side1) if side1 else set(y)
    v2 = set(y).union(*side2) if side2 else set(y)
    edge_side = {}
    for u in vertices:
        for w in adj[u]:
            if u < w:
                if u in y and w in y:
                    edge_side[(u, w)] = 1
                elif (u in v1 and u not in y) or (w in v1 and w not in y):
                    edge_side[(u, w)] = 1
                else:
                    edge_side[(u, w)] = 2
    return SeparatorResult(frozenset(y), frozenset(v1), frozenset(v2), edge_side)


def balanced_separator(g: Graph, td: TreeDecomposition, s: Iterable[int]) -> SeparatorResult:
    s = set(s)
    if not verify_tree_decomposition(g, td):
        raise InputError("tree decomposition does not verify against the graph")
    for v in s:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} of S is not in the graph")
    return separate(g.adj, range(g.n), list(td.bags), td.tree_edges, s)


def restrict(bags: Iterable[Iterable[int]], tree_edges: Iterable[tuple[int, int]],
             keep: set[int]) -> TreeDecomposition:
    """Decomposition of any subgraph on ``keep``: drop other vertices, contract."""
    new_bags = [set(b) & keep for b in bags]
    return compress(new_bags, list(tree_edges))
