# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-width tree-partition search.

Same algorithm and return convention as ``_search_py.search_width``; the two
are checked against each other in the test suite.
"""

from libc.stdlib cimport malloc, calloc, free
import time

cdef enum:
    FOUND = 1
    REFUTED = 0
    BUDGET = -1


cdef struct State:
    int n
    int width
    int connected
    long long node_limit
    double deadline
    long long nodes
    int nbags
    int budget_hit
    int *prev_start
    int *prev_list
    int *all_start
    int *all_list
    int *close_at
    int *closing_start
    int *closing_list
    int *bag_of
    int *bag_size
    int *uf_parent
    int *uf_size
    int *qcnt
    int *seen
    int *stack
    int seen_mark
    int *touched
    int *unions


cdef inline int _find(State *st, int x) nogil:
    while st.uf_parent[x] != x:
        x = st.uf_parent[x]
    return x


cdef int _dead(State *st, int i) nogil:
    cdef int k, u, b, x, w, j, top, count, all_closed
    for k in range(st.closing_start[i], st.closing_start[i + 1]):
        u = st.closing_list[k]
        b = st.bag_of[u]
        st.seen_mark += 1
        st.seen[u] = st.seen_mark
        st.stack[0] = u
        top = 1
        count = 1
        all_closed = 1
        while top > 0:
            top -= 1
            x = st.stack[top]
            if st.close_at[x] > i:
                all_closed = 0
                break
            for j in range(st.all_start[x], st.all_start[x + 1]):
                w = st.all_list[j]
                if w <= i and st.seen[w] != st.seen_mark and st.bag_of[w] == b:
                    st.seen[w] = st.seen_mark
                    st.stack[top] = w
                    top += 1
                    count += 1
        if all_closed and count < st.bag_size[b]:
            return 1
    return 0


cdef int _place(State *st, int i, int depth_off) except -2:
    cdef int n = st.n
    cdef int top, b, j, u, c, rb, rc, ok, nt, nu, t
    cdef int *touched
    cdef int *unions
    if i == n:
        return 1
    st.nodes += 1
    if st.node_limit and st.nodes > st.node_limit:
        st.budget_hit = 1
        return 0
    if st.deadline > 0 and (st.nodes & 1023) == 0:
        if time.monotonic() > st.deadline:
            st.budget_hit = 1
            return 0
    # per-depth scratch: up to n touched bags and n unions
    touched = st.touched + depth_off
    unions = st.unions + 2 * depth_off
    top = st.nbags
    for b in range(top + 1):
        if st.bag_size[b] >= st.width:
            continue
        if b == top:
            st.nbags += 1
        st.bag_of[i] = b
        st.bag_size[b] += 1
        nt = 0
        nu = 0
        ok = 1
        for j in range(st.prev_start[i], st.prev_start[i + 1]):
            u = st.prev_list[j]
            c = st.bag_of[u]
            if c == b:
                continue
            if st.qcnt[b * n + c] == 0:
                rb = _find(st, b)
                rc = _find(st, c)
                if rb == rc:
                    ok = 0
                    break
                if st.uf_size[rb] < st.uf_size[rc]:
                    rb, rc = rc, rb
                st.uf_parent[rc] = rb
                st.uf_size[rb] += st.uf_size[rc]
                unions[2 * nu] = rb
                unions[2 * nu + 1] = rc
                nu += 1
            st.qcnt[b * n + c] += 1
            st.qcnt[c * n + b] += 1
            touched[nt] = c
            nt += 1
        if ok and st.connected and _dead(st, i):
            ok = 0
        if ok:
            if _place(st, i + 1, depth_off + n):
                return 1
            if st.budget_hit:
                return 0
        for t in range(nt):
            c = touched[t]
            st.qcnt[b * n + c] -= 1
            st.qcnt[c * n + b] -= 1
        for t in range(nu - 1, -1, -1):
            rb = unions[2 * t]
            rc = unions[2 * t + 1]
            st.uf_parent[rc] = rc
            st.uf_size[rb] -= st.uf_size[rc]
        st.bag_size[b] -= 1
        st.bag_of[i] = -1
        if b == top:
            st.nbags -= 1
    return 0


cdef int *_flatten(list rows, int n, int **starts) except NULL:
    cdef int total = 0
    cdef int i, j, k
    for row in rows:
        total += len(row)
    cdef int *start = <int *> malloc((n + 1) * sizeof(int))
    cdef int *flat = <int *> malloc((total + 1) * sizeof(int))
    if start == NULL or flat == NULL:
        raise MemoryError()
    k = 0
    for i in range(n):
        start[i] = k
        for j in rows[i]:
            flat[k] = j
            k += 1
    start[n] = k
    starts[0] = start
    return flat


def search_width(int n, prev_nbrs, all_nbrs, close_at, int width, connected=False,
                 long long node_limit=0, double deadline=0.0):
    """Look for a tree-partition of width <= ``width``; see the Python twin."""
    cdef State st
    cdef int i, res
    if n == 0:
        return FOUND, [], 0
    st.n = n
    st.width = width
    st.connected = 1 if connected else 0
    st.node_limit = node_limit
    st.deadline = deadline
    st.nodes = 0
    st.nbags = 0
    st.budget_hit = 0
    st.seen_mark = 0
    closing = [[] for _ in range(n)]
    for i in range(n):
        closing[close_at[i]].append(i)
    st.prev_list = _flatten([list(r) for r in prev_nbrs], n, &st.prev_start)
    st.all_list = _flatten([list(r) for r in all_nbrs], n, &st.all_start)
    st.closing_list = _flatten(closing, n, &st.closing_start)
    st.close_at = <int *> malloc(n * sizeof(int))
    st.bag_of = <int *> malloc(n * sizeof(int))
    st.bag_size = <int *> calloc(n, sizeof(int))
    st.uf_parent = <int *> malloc(n * sizeof(int))
    st.uf_size = <int *> malloc(n * sizeof(int))
    st.qcnt = <int *> calloc(n * n, sizeof(int))
    st.seen = <int *> calloc(n, sizeof(int))
    st.stack = <int *> malloc(n * sizeof(int))
    st.touched = <int *> malloc((n + 1) * n * sizeof(int))
    st.unions = <int *> malloc(2 * (n + 1) * n * sizeof(int))
    try:
        for i in range(n):
            st.close_at[i] = close_at[i]
            st.bag_of[i] = -1
            st.uf_parent[i] = i
            st.uf_size[i] = 1
        res = _place(&st, 0, 0)
        if st.budget_hit:
            return BUDGET, None, st.nodes
        if res:
            return FOUND, [st.bag_of[i] for i in range(n)], st.nodes
        return REFUTED, None, st.nodes
    finally:
        free(st.prev_start); free(st.prev_list)
        free(st.all_start); free(st.all_list)
        free(st.closing_start); free(st.closing_list)
        free(st.close_at); free(st.bag_of); free(st.bag_size)
        free(st.uf_parent); free(st.uf_size); free(st.qcnt)
        free(st.seen); free(st.stack); free(st.touched); free(st.unions)
