"""Edge cost and heuristic of the attack planner (all values in seconds)."""

from __future__ import annotations

from ..field_graph import FieldConfig, KickEdge
from ..geometry import Disk, Point, dist_point_segment, segment_intersects_disk
from ..state import GameState, SimConfig


def time_to_approach(robot: Point, target: Point, cfg: SimConfig) -> float:
    """Straight-line walk at constant robot speed."""
    return robot.dist(target) / cfg.robot_speed


def crosses_opponent(edge_segment, state: GameState, cfg: SimConfig) -> bool:
    return any(
        segment_intersects_disk(edge_segment, Disk(o, cfg.interception_radius))
        for o in state.opponents
    )


def edge_cost(edge: KickEdge, state: GameState, is_first_kick: bool, cfg: SimConfig) -> float:
    """Travel time, plus approach time and interception penalty on a first kick.

    A first kick starts at the snapped ball vertex, which is ``edge.segment.a``.
    """
    travel = edge.length / cfg.ball_speed
    if not is_first_kick:
        return travel
    approach = time_to_approach(state.kicker, edge.segment.a, cfg)
    if crosses_opponent(edge.segment, state, cfg):
        return approach + travel * cfg.penalty_factor
    return approach + travel


def teammate_term(vertex_pos: Point, state: GameState, cfg: SimConfig) -> float:
    """Fastest approach of an ally other than the first kicker; 0 if there is none."""
    times = [
        time_to_approach(p, vertex_pos, cfg)
        for i, p in enumerate(state.allies)
        if i != state.kicking_robot
    ]
    return min(times) if times else 0.0


def heuristic(
    vertex_pos: Point,
    state: GameState,
    is_after_first_kick: bool,
    cfg: SimConfig,
    field: FieldConfig,
    mode: str | None = None,
) -> float:
    mode = cfg.heuristic_mode if mode is None else mode
    h = dist_point_segment(vertex_pos, field.attack_goal_line) / cfg.ball_speed
    if mode == "paper" and is_after_first_kick:
        return h + teammate_term(vertex_pos, state, cfg)
    return h
