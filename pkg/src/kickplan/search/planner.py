"""A* attack planner over the implicit kick graph.

The heavy loop lives in a kernel: the compiled ``_astar`` extension when it
was built, otherwise ``_astar_py``. Set ``KICKPLAN_PURE_PYTHON=1`` to force
the fallback. All geometry (ring offsets, goal directions, heuristic values,
first-kick costs) is prepared here once per call, so both kernels see
identical inputs and return identical plans.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..field_graph import (
    FieldConfig,
    GoalTarget,
    KickEdge,
    VertexId,
    all_successors,
    goal_directions,
    goal_table,
    ring_offsets,
    snap_to_vertex,
    vertex_center,
    vertex_from_index,
    vertex_index,
)
from ..geometry import Point, Segment
from ..state import GameState, SimConfig
from . import _astar_py
from .costs import edge_cost

_kernels = {"python": _astar_py.astar}
if not os.environ.get("KICKPLAN_PURE_PYTHON"):
    try:
        from . import _astar

        _kernels["compiled"] = _astar.astar
    except ImportError:  # extension not built
        pass

BACKEND = "compiled" if "compiled" in _kernels else "python"


def available_backends() -> tuple[str, ...]:
    return tuple(_kernels)


@dataclass(frozen=True)
class KickPlan:
    kicks: tuple[KickEdge, ...]
    total_cost: float

    def to_dict(self) -> dict:
        return {
            "total_cost": self.total_cost,
            "kicks": [
                {
                    "from": [e.segment.a.x, e.segment.a.y],
                    "to": [e.segment.b.x, e.segment.b.y],
                    "length": e.length,
                    "radius": e.radius,
                    "is_goal": e.is_goal,
                }
                for e in self.kicks
            ],
        }


@dataclass(frozen=True)
class _GraphArrays:
    off_ptr: np.ndarray
    off_dc: np.ndarray
    off_dr: np.ndarray
    off_len: np.ndarray
    goal_ptr: np.ndarray
    goal_dirs: np.ndarray
    goal_angle: np.ndarray
    goal_len: np.ndarray
    dist_to_goal: np.ndarray


@lru_cache(maxsize=16)
def _graph_arrays(field: FieldConfig, radii: tuple[float, ...]) -> _GraphArrays:
    dcs, drs, lens, ptr = [], [], [], [0]
    for r in radii:
        offs = ring_offsets(r, field.cell)
        dcs += [o[0] for o in offs]
        drs += [o[1] for o in offs]
        lens += [o[2] for o in offs]
        ptr.append(len(dcs))
    nv = field.n_vertices
    goal_ptr = np.zeros((len(radii), nv + 1), dtype=np.int64)
    dirs = []
    base = 0
    for k, r in enumerate(radii):
        p, d = goal_table(field, r)
        goal_ptr[k] = p + base
        dirs.append(d)
        base += d.size
    width = max(goal_directions(r, field.cell).size for r in radii)
    goal_angle = np.zeros((len(radii), width))
    for k, r in enumerate(radii):
        a = goal_directions(r, field.cell)
        goal_angle[k, : a.size] = a

    xs = (np.arange(nv) % field.ncols + 0.5) * field.cell
    ys = (np.arange(nv) // field.ncols + 0.5) * field.cell
    dx = np.maximum(np.maximum(field.post_left - xs, xs - field.post_right), 0.0)
    dy = field.length - ys
    return _GraphArrays(
        np.asarray(ptr, dtype=np.int64),
        np.asarray(dcs, dtype=np.int64),
        np.asarray(drs, dtype=np.int64),
        np.asarray(lens, dtype=np.float64),
        goal_ptr,
        np.concatenate(dirs).astype(np.int64),
        goal_angle,
        np.asarray(radii, dtype=np.float64),
        np.sqrt(dx * dx + dy * dy),
    )


def _vertex_centers(field: FieldConfig) -> tuple[np.ndarray, np.ndarray]:
    nv = field.n_vertices
    return (np.arange(nv) % field.ncols + 0.5) * field.cell, (np.arange(nv) // field.ncols + 0.5) * field.cell


def heuristic_arrays(state: GameState, cfg: SimConfig, field: FieldConfig) -> tuple[np.ndarray, np.ndarray]:
    """Per-vertex heuristic for ordinary nodes and for first-kick endpoints."""
    arrays = _graph_arrays(field, cfg.kick_radii)
    h_base = arrays.dist_to_goal / cfg.ball_speed
    if cfg.heuristic_mode != "paper":
        return h_base, h_base
    others = [p for i, p in enumerate(state.allies) if i != state.kicking_robot]
    if not others:
        return h_base, h_base
    xs, ys = _vertex_centers(field)
    walk = np.full(field.n_vertices, np.inf)
    for p in others:
        dx = xs - p.x
        dy = ys - p.y
        np.minimum(walk, np.sqrt(dx * dx + dy * dy) / cfg.robot_speed, out=walk)
    h_after = h_base + walk
    if cfg.teammate_term == "every_kick":
        return h_after, h_after
    return h_base, h_after


def plan_attack(
    state: GameState,
    cfg: SimConfig,
    field: FieldConfig | None = None,
    backend: str | None = None,
) -> KickPlan | None:
    """Least-cost kick sequence from the ball into the attacked goal, or None."""
    field = field or FieldConfig()
    kernel = _kernels[backend or BACKEND]
    arrays = _graph_arrays(field, cfg.kick_radii)
    start = snap_to_vertex(state.ball, field)
    first_edges = all_successors(start, cfg.kick_radii, field)
    first_cost = np.asarray([edge_cost(e, state, True, cfg) for e in first_edges], dtype=np.float64)
    h_base, h_first = heuristic_arrays(state, cfg, field)
    result = kernel(
        field.ncols,
        field.nrows,
        vertex_index(start, field),
        arrays.off_ptr,
        arrays.off_dc,
        arrays.off_dr,
        arrays.off_len,
        arrays.goal_ptr,
        arrays.goal_dirs,
        arrays.goal_angle,
        arrays.goal_len,
        float(cfg.ball_speed),
        np.ascontiguousarray(h_base),
        np.ascontiguousarray(h_first),
        first_cost,
    )
    if result is None:
        return None
    _, (verts, radii_idx), goal_k, goal_d = result
    kicks = []
    for a, b, k in zip(verts, verts[1:], radii_idx):
        va, vb = vertex_from_index(a, field), vertex_from_index(b, field)
        dc, dr = vb.col - va.col, vb.row - va.row
        length = field.cell * math.sqrt(dc * dc + dr * dr)
        seg = Segment(vertex_center(va, field), vertex_center(vb, field))
        kicks.append(KickEdge(va, vb, seg, length, False, cfg.kick_radii[k]))
    r = cfg.kick_radii[goal_k]
    theta = float(goal_directions(r, field.cell)[goal_d])
    src = vertex_from_index(verts[-1], field)
    a = vertex_center(src, field)
    b = Point(a.x + r * math.cos(theta), a.y + r * math.sin(theta))
    kicks.append(KickEdge(src, GoalTarget(theta, r), Segment(a, b), r, True, r))
    total = 0.0
    for i, e in enumerate(kicks):
        total += edge_cost(e, state, i == 0, cfg)
    return KickPlan(tuple(kicks), total)


def search_order_key(edge: KickEdge, g: float, f: float, field: FieldConfig, radii: tuple[float, ...]) -> tuple:
    """Open-list ordering used by the kernels, applied to a single edge."""
    if edge.is_goal:
        assert isinstance(edge.target, GoalTarget)
        return (f, -g, 1, edge.source.row, edge.source.col, edge.target.angle, radii.index(edge.radius))
    assert isinstance(edge.target, VertexId)
    return (f, -g, 0, edge.target.row, edge.target.col, 0.0, 0)
