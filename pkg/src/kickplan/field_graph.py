"""Grid decomposition of the pitch and implicit kick-edge generation.

The field is a ``width x length`` rectangle with our goal on ``y = 0`` and
the attacked goal on ``y = length``. Vertices are cell centres; column
indexes ``x`` and row indexes ``y``. Edges are never materialised globally:
ring offsets and goal-direction tables are cached per (field, radius) and
combined with a vertex on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .geometry import EPS, Point, Segment


@dataclass(frozen=True)
class FieldConfig:
    length: float = 9.0
    width: float = 6.0
    cell: float = 0.1
    goal_width: float = 2.6

    def __post_init__(self):
        if self.cell <= 0:
            raise ValueError("cell size must be positive")
        for name, extent in (("length", self.length), ("width", self.width)):
            n = extent / self.cell
            if abs(n - round(n)) > 1e-6 or round(n) < 1:
                raise ValueError(f"field {name} {extent} is not a multiple of cell {self.cell}")
        if not 0 < self.goal_width < self.width:
            raise ValueError("goal width must be positive and narrower than the field")

    @property
    def ncols(self) -> int:
        return int(round(self.width / self.cell))

    @property
    def nrows(self) -> int:
        return int(round(self.length / self.cell))

    @property
    def n_vertices(self) -> int:
        return self.ncols * self.nrows

    @property
    def post_left(self) -> float:
        return (self.width - self.goal_width) / 2.0

    @property
    def post_right(self) -> float:
        return (self.width + self.goal_width) / 2.0

    @property
    def attack_goal_line(self) -> Segment:
        return Segment(Point(self.post_left, self.length), Point(self.post_right, self.length))

    @property
    def goal_center(self) -> Point:
        return Point(self.width / 2.0, self.length)

    def contains(self, p: Point, tol: float = EPS) -> bool:
        return -tol <= p.x <= self.width + tol and -tol <= p.y <= self.length + tol

    def clamp(self, p: Point) -> Point:
        return Point(min(max(p.x, 0.0), self.width), min(max(p.y, 0.0), self.length))


class VertexId(NamedTuple):
    col: int
    row: int

    @property
    def order_key(self) -> tuple[int, int]:
        return (self.row, self.col)


class GoalTarget(NamedTuple):
    """Off-grid terminal of a goal edge: kick direction and ring radius."""

    angle: float
    radius: float


@dataclass(frozen=True)
class KickEdge:
    source: VertexId
    target: VertexId | GoalTarget
    segment: Segment
    length: float
    is_goal: bool
    radius: float


def vertex_index(v: VertexId, field: FieldConfig) -> int:
    return v.row * field.ncols + v.col


def vertex_from_index(i: int, field: FieldConfig) -> VertexId:
    row, col = divmod(i, field.ncols)
    return VertexId(col, row)


def vertex_center(v: VertexId, field: FieldConfig) -> Point:
    if not (0 <= v.col < field.ncols and 0 <= v.row < field.nrows):
        raise IndexError(f"{v} outside a {field.ncols}x{field.nrows} grid")
    return Point((v.col + 0.5) * field.cell, (v.row + 0.5) * field.cell)


def _nearest_index(coord: float, cell: float, n: int) -> int:
    # lowest index wins on equidistant centres
    k = min(max(int(math.floor(coord / cell)), 0), n - 1)
    best, best_d = k, abs(coord - (k + 0.5) * cell)
    for cand in (k - 1, k + 1):
        if 0 <= cand < n:
            d = abs(coord - (cand + 0.5) * cell)
            if d < best_d - EPS or (abs(d - best_d) <= EPS and cand < best):
                best, best_d = cand, d
    return best


def snap_to_vertex(p: Point, field: FieldConfig) -> VertexId:
    """Vertex whose cell centre is nearest to ``p`` (clamped into the field).

    Distance to a grid of centres separates per axis, so the lexicographic
    (row, col) tie-break reduces to taking the lowest index on each axis.
    """
    q = field.clamp(Point(*p))
    return VertexId(
        _nearest_index(q.x, field.cell, field.ncols),
        _nearest_index(q.y, field.cell, field.nrows),
    )


@lru_cache(maxsize=None)
def ring_offsets(r_kick: float, cell: float) -> tuple[tuple[int, int, float], ...]:
    """(dcol, drow, length) of every grid offset on the kick ring, sorted by (drow, dcol).

    An offset is on the ring when its length is within half a cell of ``r_kick``.
    """
    if not r_kick > cell:
        raise ValueError(f"kick radius {r_kick} must exceed the cell size {cell}")
    reach = int(math.ceil(r_kick / cell + 0.5)) + 1
    out = []
    for dr in range(-reach, reach + 1):
        for dc in range(-reach, reach + 1):
            if dc == 0 and dr == 0:
                continue
            length = cell * math.sqrt(dc * dc + dr * dr)
            if abs(length - r_kick) <= cell / 2 + EPS:
                out.append((dc, dr, length))
    return tuple(out)


@lru_cache(maxsize=None)
def goal_directions(r_kick: float, cell: float) -> np.ndarray:
    """Sampled kick angles in [0, 2pi) with endpoint spacing at most cell/2."""
    n = int(math.ceil(2.0 * math.pi * r_kick / (cell / 2.0)))
    return np.arange(n, dtype=np.float64) * (2.0 * math.pi / n)


@lru_cache(maxsize=None)
def goal_table(field: FieldConfig, r_kick: float) -> tuple[np.ndarray, np.ndarray]:
    """CSR table of scoring directions: ``dirs[ptr[v]:ptr[v+1]]`` for vertex index v.

    A direction scores from a vertex when the kick endpoint lies beyond the
    attacked goal line and the ball crosses that line strictly between the posts.
    """
    angles = goal_directions(r_kick, field.cell)
    cos_a = np.cos(angles)
    sin_a = np.sin(angles)
    lo, hi = field.post_left, field.post_right
    xs = (np.arange(field.ncols) + 0.5) * field.cell
    counts = np.zeros(field.n_vertices, dtype=np.int64)
    per_vertex: list[np.ndarray] = []
    forward = np.nonzero(sin_a > EPS)[0]
    for row in range(field.nrows):
        y = (row + 0.5) * field.cell
        depth = field.length - y
        if depth >= r_kick:
            per_vertex.extend([np.empty(0, dtype=np.int64)] * field.ncols)
            continue
        reach = forward[y + r_kick * sin_a[forward] > field.length + EPS]
        cross = xs[:, None] + depth * cos_a[reach][None, :] / sin_a[reach][None, :]
        ok = (cross > lo + EPS) & (cross < hi - EPS)
        for col in range(field.ncols):
            hits = reach[ok[col]]
            counts[row * field.ncols + col] = hits.size
            per_vertex.append(hits.astype(np.int64))
    ptr = np.zeros(field.n_vertices + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    dirs = np.concatenate(per_vertex) if per_vertex else np.empty(0, dtype=np.int64)
    return ptr, dirs


def goal_edges(v: VertexId, r_kick: float, field: FieldConfig) -> list[KickEdge]:
    if not r_kick > 0:
        raise ValueError("kick radius must be positive")
    ptr, dirs = goal_table(field, r_kick)
    angles = goal_directions(r_kick, field.cell)
    i = vertex_index(v, field)
    a = vertex_center(v, field)
    out = []
    for k in dirs[ptr[i]:ptr[i + 1]]:
        theta = float(angles[k])
        b = Point(a.x + r_kick * math.cos(theta), a.y + r_kick * math.sin(theta))
        out.append(KickEdge(v, GoalTarget(theta, r_kick), Segment(a, b), r_kick, True, r_kick))
    return out


def kick_successors(v: VertexId, r_kick: float, field: FieldConfig) -> list[KickEdge]:
    """Ring edges in (row, col) order of destination, then goal edges by angle."""
    a = vertex_center(v, field)
    out = []
    for dc, dr, length in ring_offsets(r_kick, field.cell):
        col, row = v.col + dc, v.row + dr
        if 0 <= col < field.ncols and 0 <= row < field.nrows:
            w = VertexId(col, row)
            out.append(KickEdge(v, w, Segment(a, vertex_center(w, field)), length, False, r_kick))
    out.extend(goal_edges(v, r_kick, field))
    return out


def all_successors(v: VertexId, radii: Sequence[float], field: FieldConfig) -> list[KickEdge]:
    out: list[KickEdge] = []
    for r in radii:
        out.extend(kick_successors(v, r, field))
    return out
