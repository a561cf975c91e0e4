"""Kick-selection policies: planning, reactive, forward and expert.

Each policy maps a :class:`GameState` to one :class:`ChosenKick` (or None when
no kick exists). ``make_strategy`` binds a policy to its configuration so the
simulator can call it with the state alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .field_graph import FieldConfig, KickEdge, all_successors, snap_to_vertex
from .geometry import EPS, Disk, Point, Segment, segment_intersects_disk
from .search import edge_cost, heuristic, plan_attack, search_order_key
from .state import GameState, SimConfig

STRATEGY_ORDER = ("forward", "expert", "reactive", "planning")


@dataclass(frozen=True)
class ChosenKick:
    origin: Point
    direction: float
    length: float
    segment: Segment

    @classmethod
    def from_edge(cls, edge: KickEdge) -> ChosenKick:
        a, b = edge.segment.a, edge.segment.b
        return cls(a, math.atan2(b.y - a.y, b.x - a.x), edge.length, edge.segment)

    @classmethod
    def polar(cls, origin: Point, direction: float, length: float) -> ChosenKick:
        end = Point(origin.x + length * math.cos(direction), origin.y + length * math.sin(direction))
        return cls(origin, direction, length, Segment(origin, end))

    def to_dict(self) -> dict:
        return {
            "origin": list(self.origin),
            "direction": self.direction,
            "length": self.length,
            "end": list(self.segment.b),
        }

    @classmethod
    def from_dict(cls, d: dict) -> ChosenKick:
        origin = Point(*d["origin"])
        return cls(origin, d["direction"], d["length"], Segment(origin, Point(*d["end"])))


def choose_planning(state: GameState, cfg: SimConfig, field: FieldConfig) -> ChosenKick | None:
    plan = plan_attack(state, cfg, field)
    if plan is None:
        return None
    return ChosenKick.from_edge(plan.kicks[0])


def reactive_scores(state: GameState, cfg: SimConfig, field: FieldConfig) -> list[tuple[tuple, KickEdge]]:
    """One-step look-ahead score of every first kick, keyed in search order."""
    start = snap_to_vertex(state.ball, field)
    scored = []
    for edge in all_successors(start, cfg.kick_radii, field):
        g = edge_cost(edge, state, True, cfg)
        h = 0.0 if edge.is_goal else heuristic(edge.segment.b, state, True, cfg, field, mode="paper")
        scored.append((search_order_key(edge, g, g + h, field, cfg.kick_radii), edge))
    return scored


def choose_reactive(state: GameState, cfg: SimConfig, field: FieldConfig) -> ChosenKick | None:
    scored = reactive_scores(state, cfg, field)
    if not scored:
        return None
    return ChosenKick.from_edge(min(scored, key=lambda item: item[0])[1])


def choose_forward(state: GameState, cfg: SimConfig, field: FieldConfig) -> ChosenKick:
    goal = field.goal_center
    return ChosenKick.polar(
        state.ball, math.atan2(goal.y - state.ball.y, goal.x - state.ball.x), max(cfg.kick_radii)
    )


# ---------------------------------------------------------------------------
# Expert table

EXPERT_BLOCK = 0.2
EXPERT_STEP_DEG = 15
EXPERT_W_AIM = 1.0
EXPERT_W_PROGRESS = 0.5
TABLE_MAGIC = "kickplan-expert-table"
TABLE_VERSION = 1


@dataclass(frozen=True)
class ExpertTable:
    block: float
    bcols: int
    brows: int
    entries: tuple[tuple[tuple[float, float], ...], ...]  # row-major, (direction, score) best first

    def block_of(self, p: Point) -> tuple[int, int]:
        bc = min(max(int(math.floor(p.x / self.block)), 0), self.bcols - 1)
        br = min(max(int(math.floor(p.y / self.block)), 0), self.brows - 1)
        return bc, br

    def entries_at(self, bc: int, br: int) -> tuple[tuple[float, float], ...]:
        return self.entries[br * self.bcols + bc]

    def dumps(self) -> str:
        lines = [f"{TABLE_MAGIC} v{TABLE_VERSION} {self.bcols} {self.brows} {self.block!r}"]
        for i, row in enumerate(self.entries):
            br, bc = divmod(i, self.bcols)
            pairs = " ".join(f"{d!r}:{s!r}" for d, s in row)
            lines.append(f"{bc} {br} {pairs}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> ExpertTable:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if len(head) != 5 or head[0] != TABLE_MAGIC or head[1] != f"v{TABLE_VERSION}":
            raise ValueError(f"not a v{TABLE_VERSION} expert table: {lines[0]!r}")
        bcols, brows, block = int(head[2]), int(head[3]), float(head[4])
        grid: list[tuple | None] = [None] * (bcols * brows)
        for ln in lines[1:]:
            parts = ln.split()
            bc, br = int(parts[0]), int(parts[1])
            row = []
            for pair in parts[2:]:
                d, s = pair.split(":")
                row.append((float(d), float(s)))
            if not row:
                raise ValueError(f"block ({bc}, {br}) has no entries")
            grid[br * bcols + bc] = tuple(row)
        if any(r is None for r in grid):
            raise ValueError("expert table does not cover every block")
        return cls(block, bcols, brows, tuple(grid))  # type: ignore[arg-type]


def expert_kick(origin: Point, direction: float, length: float, field: FieldConfig) -> ChosenKick | None:
    """Kick of the given length, cut at the goal line when it scores.

    Returns None when the ball would leave the field anywhere but the goal mouth.
    """
    c, s = math.cos(direction), math.sin(direction)
    end_y = origin.y + length * s
    if s > EPS and end_y > field.length:
        t = (field.length - origin.y) / s
        x = origin.x + t * c
        if field.post_left < x < field.post_right:
            return ChosenKick(origin, direction, t, Segment(origin, Point(x, field.length)))
        return None
    kick = ChosenKick.polar(origin, direction, length)
    return kick if field.contains(kick.segment.b) else None


def expert_score(center: Point, direction: float, length: float, field: FieldConfig) -> float:
    goal = field.goal_center
    gx, gy = goal.x - center.x, goal.y - center.y
    aim = (math.cos(direction) * gx + math.sin(direction) * gy) / math.hypot(gx, gy)
    end_y = min(center.y + length * math.sin(direction), field.length)
    return EXPERT_W_AIM * aim + EXPERT_W_PROGRESS * (end_y - center.y) / length


def build_expert_table(field: FieldConfig, cfg: SimConfig) -> ExpertTable:
    """Procedural per-block ranking of kick directions.

    Directions every 15 degrees, scored by aim at the goal centre plus forward
    progress (as a fraction of the kick length). Directions that would send the
    ball out of play from the block centre are dropped; ties go to the smaller
    angle via a 1e-9 per-index perturbation.
    """
    length = max(cfg.kick_radii)
    bcols = int(round(field.width / EXPERT_BLOCK))
    brows = int(round(field.length / EXPERT_BLOCK))
    n_dir = 360 // EXPERT_STEP_DEG
    entries = []
    for br in range(brows):
        for bc in range(bcols):
            center = Point((bc + 0.5) * EXPERT_BLOCK, (br + 0.5) * EXPERT_BLOCK)
            row = []
            for i in range(n_dir):
                theta = math.radians(i * EXPERT_STEP_DEG)
                if expert_kick(center, theta, length, field) is None:
                    continue
                row.append((theta, expert_score(center, theta, length, field) - 1e-9 * i))
            if not row:
                # kick straight up the pitch rather than leave a block empty
                row.append((math.pi / 2, expert_score(center, math.pi / 2, length, field)))
            row.sort(key=lambda e: (-e[1], e[0]))
            entries.append(tuple(row))
    return ExpertTable(EXPERT_BLOCK, bcols, brows, tuple(entries))


def kick_is_blocked(kick: ChosenKick, state: GameState, cfg: SimConfig) -> bool:
    return any(
        segment_intersects_disk(kick.segment, Disk(o, cfg.interception_radius)) for o in state.opponents
    )


def choose_expert(
    state: GameState, table: ExpertTable, cfg: SimConfig, field: FieldConfig
) -> ChosenKick | None:
    entries = table.entries_at(*table.block_of(state.ball))
    length = max(cfg.kick_radii)
    fallback = None
    for direction, _ in entries:
        kick = expert_kick(state.ball, direction, length, field)
        if kick is None:
            continue
        if fallback is None:
            fallback = kick
        if not kick_is_blocked(kick, state, cfg):
            return kick
    if fallback is None and entries:
        fallback = ChosenKick.polar(state.ball, entries[0][0], length)
    return fallback


Strategy = Callable[[GameState], "ChosenKick | None"]


def make_strategy(name: str, cfg: SimConfig, field: FieldConfig, table: ExpertTable | None = None) -> Strategy:
    if name == "planning":
        return lambda s: choose_planning(s, cfg, field)
    if name == "reactive":
        return lambda s: choose_reactive(s, cfg, field)
    if name == "forward":
        return lambda s: choose_forward(s, cfg, field)
    if name == "expert":
        tbl = table or build_expert_table(field, cfg)
        return lambda s: choose_expert(s, tbl, cfg, field)
    raise ValueError(f"unknown strategy {name!r}; expected one of {STRATEGY_ORDER}")
