# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled A* kernel. Same inputs, tie-breaking and arithmetic as ``_astar_py``."""

from libc.stdlib cimport malloc, realloc, free
from libc.math cimport INFINITY

cdef struct Entry:
    double f
    double neg_g
    long kind
    long row
    long col
    double angle
    long k
    long node
    long d


cdef inline bint less(Entry* a, Entry* b) nogil:
    if a.f != b.f:
        return a.f < b.f
    if a.neg_g != b.neg_g:
        return a.neg_g < b.neg_g
    if a.kind != b.kind:
        return a.kind < b.kind
    if a.row != b.row:
        return a.row < b.row
    if a.col != b.col:
        return a.col < b.col
    if a.angle != b.angle:
        return a.angle < b.angle
    if a.k != b.k:
        return a.k < b.k
    if a.node != b.node:
        return a.node < b.node
    return a.d < b.d


cdef struct Heap:
    Entry* data
    Py_ssize_t size
    Py_ssize_t cap


cdef int heap_push(Heap* h, Entry e) except -1 nogil:
    cdef Entry* grown
    cdef Py_ssize_t i, p
    if h.size == h.cap:
        h.cap = h.cap * 2 if h.cap else 1024
        grown = <Entry*> realloc(h.data, h.cap * sizeof(Entry))
        if grown == NULL:
            with gil:
                raise MemoryError()
        h.data = grown
    i = h.size
    h.size += 1
    while i > 0:
        p = (i - 1) >> 1
        if not less(&e, &h.data[p]):
            break
        h.data[i] = h.data[p]
        i = p
    h.data[i] = e
    return 0


cdef Entry heap_pop(Heap* h) nogil:
    cdef Entry top = h.data[0]
    cdef Entry last
    cdef Py_ssize_t i = 0, c, n
    h.size -= 1
    n = h.size
    if n > 0:
        last = h.data[n]
        while True:
            c = 2 * i + 1
            if c >= n:
                break
            if c + 1 < n and less(&h.data[c + 1], &h.data[c]):
                c += 1
            if not less(&h.data[c], &last):
                break
            h.data[i] = h.data[c]
            i = c
        h.data[i] = last
    return top


def astar(
    long ncols,
    long nrows,
    long start,
    const long long[::1] off_ptr,
    const long long[::1] off_dc,
    const long long[::1] off_dr,
    const double[::1] off_len,
    const long long[:, ::1] goal_ptr,
    const long long[::1] goal_dirs,
    const double[:, ::1] goal_angle,
    const double[::1] goal_len,
    double ball_speed,
    const double[::1] h_base,
    const double[::1] h_first,
    const double[::1] first_cost,
):
    cdef long nv = ncols * nrows
    cdef long nr = goal_len.shape[0]
    cdef double* best_g = <double*> malloc(nv * sizeof(double))
    cdef long* parent = <long*> malloc(nv * sizeof(long))
    cdef long* parent_r = <long*> malloc(nv * sizeof(long))
    cdef Heap heap
    cdef Entry e, cur
    cdef long i, r, j, c2, r2, w, dd, i_first, row, col, node
    cdef double g, g2, cost
    cdef bint first, found = False
    heap.data = NULL
    heap.size = 0
    heap.cap = 0
    if best_g == NULL or parent == NULL or parent_r == NULL:
        free(best_g); free(parent); free(parent_r)
        raise MemoryError()
    try:
        with nogil:
            for i in range(nv):
                best_g[i] = INFINITY
                parent[i] = -1
                parent_r[i] = -1
            best_g[start] = 0.0
            e.f = h_base[start]
            e.neg_g = -0.0
            e.kind = 0
            e.row = start // ncols
            e.col = start % ncols
            e.angle = 0.0
            e.k = 0
            e.node = start
            e.d = -1
            heap_push(&heap, e)
            while heap.size > 0:
                cur = heap_pop(&heap)
                g = -cur.neg_g
                if cur.kind == 1:
                    found = True
                    break
                node = cur.node
                if g > best_g[node]:
                    continue
                row = cur.row
                col = cur.col
                first = node == start
                i_first = 0
                for r in range(nr):
                    for j in range(off_ptr[r], off_ptr[r + 1]):
                        c2 = col + off_dc[j]
                        r2 = row + off_dr[j]
                        if c2 < 0 or c2 >= ncols or r2 < 0 or r2 >= nrows:
                            continue
                        if first:
                            cost = first_cost[i_first]
                            i_first += 1
                        else:
                            cost = off_len[j] / ball_speed
                        g2 = g + cost
                        w = r2 * ncols + c2
                        if g2 < best_g[w]:
                            best_g[w] = g2
                            parent[w] = node
                            parent_r[w] = r
                            e.f = g2 + (h_first[w] if first else h_base[w])
                            e.neg_g = -g2
                            e.kind = 0
                            e.row = r2
                            e.col = c2
                            e.angle = 0.0
                            e.k = 0
                            e.node = w
                            e.d = -1
                            heap_push(&heap, e)
                    for j in range(goal_ptr[r, node], goal_ptr[r, node + 1]):
                        dd = goal_dirs[j]
                        if first:
                            cost = first_cost[i_first]
                            i_first += 1
                        else:
                            cost = goal_len[r] / ball_speed
                        g2 = g + cost
                        e.f = g2
                        e.neg_g = -g2
                        e.kind = 1
                        e.row = row
                        e.col = col
                        e.angle = goal_angle[r, dd]
                        e.k = r
                        e.node = node
                        e.d = dd
                        heap_push(&heap, e)
        if not found:
            return None
        node = cur.node
        verts = [node]
        radii = []
        while node != start:
            radii.append(parent_r[node])
            node = parent[node]
            verts.append(node)
        verts.reverse()
        radii.reverse()
        return -cur.neg_g, (verts, radii), cur.k, cur.d
    finally:
        free(best_g)
        free(parent)
        free(parent_r)
        free(heap.data)
