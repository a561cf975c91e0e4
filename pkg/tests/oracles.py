"""Independent reference computations used by the tests.

Nothing here goes through the planner's kernels or cached tables.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from kickplan.field_graph import FieldConfig, goal_edges, vertex_from_index


def cross_exact(a, b, c, d) -> bool:
    """Closed segment intersection in exact rational arithmetic."""
    a, b, c, d = ([Fraction(v) for v in p] for p in (a, b, c, d))

    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 0) - (v < 0)

    def within(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and within(a, b, c))
        or (o2 == 0 and within(a, b, d))
        or (o3 == 0 and within(c, d, a))
        or (o4 == 0 and within(c, d, b))
    )


def sampled_min_distance(p, a, b, n: int = 10_000) -> float:
    t = np.linspace(0.0, 1.0, n)
    xs = a[0] + (b[0] - a[0]) * t
    ys = a[1] + (b[1] - a[1]) * t
    return float(np.min(np.hypot(xs - p[0], ys - p[1])))


def centers(field: FieldConfig) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(field.n_vertices)
    return (idx % field.ncols + 0.5) * field.cell, (idx // field.ncols + 0.5) * field.cell


def band_neighbours(field: FieldConfig, r_kick: float, chunk: int = 400):
    """All (source, target, length) ring pairs by brute force over every vertex pair."""
    xs, ys = centers(field)
    src, dst, length = [], [], []
    for lo in range(0, field.n_vertices, chunk):
        hi = min(lo + chunk, field.n_vertices)
        d = np.hypot(xs[None, :] - xs[lo:hi, None], ys[None, :] - ys[lo:hi, None])
        i, j = np.nonzero((np.abs(d - r_kick) <= field.cell / 2 + 1e-9) & (d > 0))
        src.append(i + lo)
        dst.append(j)
        length.append(d[i, j])
    return np.concatenate(src), np.concatenate(dst), np.concatenate(length)


def cost_to_goal(field: FieldConfig, radii, ball_speed: float) -> np.ndarray:
    """Cheapest non-first-kick time from every vertex into the goal (uniform-cost search)."""
    nv = field.n_vertices
    sink = nv
    rows, cols, data = [], [], []
    for r in radii:
        s, t, length = band_neighbours(field, r)
        # reversed edges so a single search from the sink covers every vertex
        rows.append(t)
        cols.append(s)
        data.append(length / ball_speed)
        scorers = np.array([v for v in range(nv) if goal_edges(vertex_from_index(v, field), r, field)])
        rows.append(np.full(scorers.size, sink))
        cols.append(scorers)
        data.append(np.full(scorers.size, r / ball_speed))
    # mixed radii can repeat a pair; the sparse format would sum duplicates, so keep the cheapest
    dist = dijkstra(_min_duplicates(np.concatenate(rows), np.concatenate(cols), np.concatenate(data), nv + 1), indices=sink)
    return dist[:nv]


def _min_duplicates(rows, cols, data, n):
    order = np.lexsort((data, cols, rows))
    rows, cols, data = rows[order], cols[order], data[order]
    keep = np.ones(rows.size, dtype=bool)
    keep[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
    return coo_matrix((data[keep], (rows[keep], cols[keep])), shape=(n, n)).tocsr()
