"""Pure-Python A* kernel; the reference the compiled kernel must match bit for bit.

Heap entries are ``(f, -g, kind, row, col, angle, radius_idx, node, direction)``
with ``kind`` 0 for grid vertices and 1 for goal pseudo-nodes. For goal
entries ``node`` is the vertex the goal kick leaves from.
"""

from __future__ import annotations

import heapq


def astar(
    ncols,
    nrows,
    start,
    off_ptr,
    off_dc,
    off_dr,
    off_len,
    goal_ptr,
    goal_dirs,
    goal_angle,
    goal_len,
    ball_speed,
    h_base,
    h_first,
    first_cost,
):
    nv = ncols * nrows
    nr = len(goal_len)
    off_ptr = [int(x) for x in off_ptr]
    off_dc = [int(x) for x in off_dc]
    off_dr = [int(x) for x in off_dr]
    off_len = [float(x) for x in off_len]
    goal_len = [float(x) for x in goal_len]
    h_base = h_base.tolist() if hasattr(h_base, "tolist") else list(h_base)
    h_first = h_first.tolist() if hasattr(h_first, "tolist") else list(h_first)
    first_cost = [float(x) for x in first_cost]

    inf = float("inf")
    best_g = [inf] * nv
    parent = [-1] * nv
    parent_r = [-1] * nv
    best_g[start] = 0.0
    s_row, s_col = divmod(start, ncols)
    heap = [(h_base[start], -0.0, 0, s_row, s_col, 0.0, 0, start, -1)]
    push = heapq.heappush
    pop = heapq.heappop

    while heap:
        f, neg_g, kind, row, col, angle, k, node, d = pop(heap)
        g = -neg_g
        if kind == 1:
            return g, _path(parent, parent_r, node, start), k, d
        if g > best_g[node]:
            continue
        first = node == start
        i_first = 0
        h_arr = h_first if first else h_base
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
                    push(heap, (g2 + h_arr[w], -g2, 0, r2, c2, 0.0, 0, w, -1))
            for j in range(int(goal_ptr[r, node]), int(goal_ptr[r, node + 1])):
                dd = int(goal_dirs[j])
                if first:
                    cost = first_cost[i_first]
                    i_first += 1
                else:
                    cost = goal_len[r] / ball_speed
                g2 = g + cost
                push(heap, (g2, -g2, 1, row, col, float(goal_angle[r, dd]), r, node, dd))
    return None


def _path(parent, parent_r, node, start):
    verts = [node]
    radii = []
    while node != start:
        radii.append(parent_r[node])
        node = parent[node]
        verts.append(node)
    verts.reverse()
    radii.reverse()
    return verts, radii
