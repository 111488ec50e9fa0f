"""Pure-Python fallback for the fixed-width tree-partition search.

Vertices arrive relabelled in search order ``0..n-1``. The search assigns
them one at a time to bags using restricted-growth labels (a new bag id is
always the next unused one), keeps bag sizes under the width cap, and
maintains the quotient graph incrementally: a new quotient edge joining two
bags already connected in the quotient closes a cycle and prunes the branch.
The union-find has no path compression so that unions can be undone.

With ``connected`` set, only partitions whose bags induce connected
subgraphs are explored: once every vertex of some bag component has all its
neighbours assigned, that component can never grow, so a bag holding anything
else is dead.

Statuses: 1 = found, 0 = refuted, -1 = budget exhausted.
"""

from __future__ import annotations

import time

FOUND, REFUTED, BUDGET = 1, 0, -1


class _Budget(Exception):
    pass


def search_width(n, prev_nbrs, all_nbrs, close_at, width, connected=False,
                 node_limit=0, deadline=0.0):
    """Look for a tree-partition of width <= ``width``.

    Returns ``(status, labels, nodes)`` where ``labels[i]`` is the bag of
    vertex i when status is FOUND.
    """
    if n == 0:
        return FOUND, [], 0
    bag_of = [-1] * n
    bag_size = [0] * n
    uf_parent = list(range(n))
    uf_size = [1] * n
    qcnt = [[0] * n for _ in range(n)]
    closing = [[] for _ in range(n)]
    for u in range(n):
        closing[close_at[u]].append(u)
    nodes = 0
    nbags = 0

    def find(x):
        while uf_parent[x] != x:
            x = uf_parent[x]
        return x

    def dead(i):
        # any closed component sharing its bag with other vertices?
        for u in closing[i]:
            b = bag_of[u]
            seen = {u}
            stack = [u]
            all_closed = True
            while stack:
                x = stack.pop()
                if close_at[x] > i:
                    all_closed = False
                    break
                for w in all_nbrs[x]:
                    if w <= i and w not in seen and bag_of[w] == b:
                        seen.add(w)
                        stack.append(w)
            if all_closed and len(seen) < bag_size[b]:
                return True
        return False

    def place(i):
        nonlocal nodes, nbags
        if i == n:
            return True
        nodes += 1
        if node_limit and nodes > node_limit:
            raise _Budget
        if deadline and (nodes & 1023) == 0 and time.monotonic() > deadline:
            raise _Budget
        top = nbags
        for b in range(top + 1):
            if bag_size[b] >= width:
                continue
            if b == top:
                nbags += 1
            bag_of[i] = b
            bag_size[b] += 1
            touched = []
            unions = []
            ok = True
            for u in prev_nbrs[i]:
                c = bag_of[u]
                if c == b:
                    continue
                if qcnt[b][c] == 0:
                    rb, rc = find(b), find(c)
                    if rb == rc:
                        ok = False
                        break
                    if uf_size[rb] < uf_size[rc]:
                        rb, rc = rc, rb
                    uf_parent[rc] = rb
                    uf_size[rb] += uf_size[rc]
                    unions.append((rb, rc))
                qcnt[b][c] += 1
                qcnt[c][b] += 1
                touched.append(c)
            if ok and connected and dead(i):
                ok = False
            if ok and place(i + 1):
                return True
            for c in touched:
                qcnt[b][c] -= 1
                qcnt[c][b] -= 1
            for rb, rc in reversed(unions):
                uf_parent[rc] = rc
                uf_size[rb] -= uf_size[rc]
            bag_size[b] -= 1
            bag_of[i] = -1
            if b == top:
                nbags -= 1
        return False

    try:
        found = place(0)
    except _Budget:
        return BUDGET, None, nodes
    if found:
        return FOUND, list(bag_of), nodes
    return REFUTED, None, nodes
