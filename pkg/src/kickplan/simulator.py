"""Seeded game simulation: layouts, kick resolution, interception and possession.

Randomness comes from numpy's PCG64 keyed by a ``SeedSequence`` built from an
integer path (master seed, layout index, strategy index, stream tag), so a
game's draws do not depend on which other games ran before it or in which
process.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field as dc_field

import numpy as np

from .field_graph import FieldConfig
from .geometry import Disk, Point, Segment, project_param, segment_intersects_disk, segments_cross
from .search import time_to_approach
from .state import GameState, SimConfig, nearest_index
from .strategies import ChosenKick, Strategy

LAYOUT_STREAM = 0
GAME_STREAM = 1

BALL_OFFSET = 0.20
MIN_SEPARATION = 0.5
PENALTY_DEPTH = 2.0
PENALTY_WIDTH = 5.0


class Rng:
    """PCG64 stream for a fixed integer key path."""

    def __init__(self, *key: int):
        self.key = tuple(int(k) for k in key)
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(self.key))))

    def child(self, *key: int) -> Rng:
        return Rng(*self.key, *key)

    def random(self) -> float:
        return float(self._gen.random())

    def uniform(self, lo: float, hi: float) -> float:
        return float(self._gen.uniform(lo, hi))

    def integers(self, n: int) -> int:
        return int(self._gen.integers(n))


# ---------------------------------------------------------------------------
# Layouts


def _separated(p: Point, placed: list[Point]) -> bool:
    return all(p.dist(q) >= MIN_SEPARATION for q in placed)


def _draw(rng: Rng, sampler, placed: list[Point], tries: int = 10_000) -> Point:
    for _ in range(tries):
        p = sampler()
        if _separated(p, placed):
            return p
    raise RuntimeError("could not place robot with the required separation")


def _in_disk(rng: Rng, center: Point, radius: float) -> Point:
    r = radius * math.sqrt(rng.random())
    a = rng.uniform(0.0, 2.0 * math.pi)
    return Point(center.x + r * math.cos(a), center.y + r * math.sin(a))


def _anywhere(rng: Rng, field: FieldConfig, margin: float) -> Point:
    return Point(rng.uniform(margin, field.width - margin), rng.uniform(margin, field.length - margin))


def generate_random_layout(seed: int, field: FieldConfig | None = None, margin: float = 0.2) -> GameState:
    field = field or FieldConfig()
    rng = Rng(seed, LAYOUT_STREAM)
    keeper = field.goal_center
    placed = [keeper]
    allies = []
    for _ in range(3):
        p = _draw(rng, lambda: _anywhere(rng, field, margin), placed)
        allies.append(p)
        placed.append(p)
    opponents = []
    for _ in range(3):
        p = _draw(rng, lambda: _anywhere(rng, field, margin), placed)
        opponents.append(p)
        placed.append(p)
    owner = allies[rng.integers(3)]
    while True:
        a = rng.uniform(0.0, 2.0 * math.pi)
        ball = Point(owner.x + BALL_OFFSET * math.cos(a), owner.y + BALL_OFFSET * math.sin(a))
        if field.contains(ball, tol=0.0):
            break
    return GameState(ball, tuple(allies), (*opponents, keeper))


def attack_zones(field: FieldConfig) -> dict[str, tuple]:
    """Anchor points and jitter of the counter-attack formation."""
    mid = field.length / 2.0
    cx = field.width / 2.0
    return {
        "owner": (Point(cx, PENALTY_DEPTH + 0.3), 0.3),
        "wing_left": (Point(field.width / 4.0, mid), 1.0),
        "wing_right": (Point(3.0 * field.width / 4.0, mid), 1.0),
        "penalty_area": (cx - PENALTY_WIDTH / 2.0, 0.0, cx + PENALTY_WIDTH / 2.0, PENALTY_DEPTH),
        "midfield": (Point(cx, mid), 0.5),
    }


def generate_attack_layout(seed: int, field: FieldConfig | None = None, margin: float = 0.2) -> GameState:
    field = field or FieldConfig()
    rng = Rng(seed, LAYOUT_STREAM)
    zones = attack_zones(field)
    keeper = field.goal_center
    placed = [keeper]

    anchor, jitter = zones["owner"]
    owner = _in_disk(rng, anchor, jitter)
    goal = field.goal_center
    dx, dy = goal.x - owner.x, goal.y - owner.y
    d = math.hypot(dx, dy)
    ball = Point(owner.x + BALL_OFFSET * dx / d, owner.y + BALL_OFFSET * dy / d)
    placed.append(owner)
    allies = [owner]
    for name in ("wing_left", "wing_right"):
        base, lateral = zones[name]
        p = _draw(rng, lambda: Point(base.x + rng.uniform(-lateral, lateral), base.y), placed)
        allies.append(p)
        placed.append(p)

    x0, y0, x1, y1 = zones["penalty_area"]
    # keep clear of the ball as well as the robots
    crowd = placed + [ball]
    defender = _draw(rng, lambda: Point(rng.uniform(x0 + margin, x1 - margin), rng.uniform(y0 + margin, y1 - margin)), crowd)
    placed.append(defender)
    crowd.append(defender)
    base, jitter = zones["midfield"]
    midfielder = _draw(rng, lambda: _in_disk(rng, base, jitter), crowd)
    placed.append(midfielder)
    crowd.append(midfielder)
    rover = _draw(rng, lambda: _anywhere(rng, field, margin), crowd)
    return GameState(ball, tuple(allies), (defender, midfielder, rover, keeper), kicking_robot=0)


# ---------------------------------------------------------------------------
# Kick resolution


@dataclass(frozen=True)
class KickOutcome:
    result: str  # "goal" | "intercepted" | "continue"
    reason: str  # "goal" | "disk" | "race" | "out" | "landed"
    intersected_zone: bool
    survived_pass_through: bool
    approach_time: float
    travel_time: float
    next_approach_time: float
    ball_end: Point
    next_state: GameState | None
    receiver: int = -1


def crossed_disks(seg: Segment, opponents, radius: float) -> list[tuple[float, int]]:
    """(position along the kick, opponent index) of every zone the kick touches, in flight order."""
    hits = []
    for i, o in enumerate(opponents):
        if segment_intersects_disk(seg, Disk(o, radius)):
            hits.append((project_param(o, seg), i))
    hits.sort()
    return hits


def scores(seg: Segment, field: FieldConfig) -> bool:
    return segments_cross(seg, field.attack_goal_line)


def resolve_kick(
    state: GameState, kick: ChosenKick, cfg: SimConfig, rng: Rng, field: FieldConfig | None = None
) -> KickOutcome:
    field = field or FieldConfig()
    seg = kick.segment
    kicker = state.kicking_robot
    approach = time_to_approach(state.kicker, kick.origin, cfg)
    length = seg.length

    hits = crossed_disks(seg, state.opponents, cfg.interception_radius)
    for t, _ in hits:
        # one uniform per crossing, compared against a shared threshold
        if rng.random() >= cfg.pass_through_prob:
            stop = seg.at(t)
            return KickOutcome(
                "intercepted", "disk", True, False, approach, t * length / cfg.ball_speed, 0.0, stop, None
            )
    zone = bool(hits)
    travel = length / cfg.ball_speed
    if scores(seg, field):
        return KickOutcome("goal", "goal", zone, zone, approach, travel, 0.0, seg.b, None)

    landing = seg.b
    if not field.contains(landing):
        return KickOutcome("intercepted", "out", zone, zone, approach, travel, 0.0, landing, None)

    allies = list(state.allies)
    allies[kicker] = kick.origin
    receiver = nearest_index(allies, landing)
    ally_time = time_to_approach(allies[receiver], landing, cfg)
    opp_time = min((time_to_approach(o, landing, cfg) for o in state.opponents), default=math.inf)
    if opp_time < ally_time:
        return KickOutcome("intercepted", "race", zone, zone, approach, travel, 0.0, landing, None)
    allies[receiver] = landing
    nxt = GameState(landing, tuple(allies), state.opponents, kicking_robot=receiver)
    return KickOutcome("continue", "landed", zone, zone, approach, travel, ally_time, landing, nxt, receiver)


# ---------------------------------------------------------------------------
# Game loop


@dataclass(frozen=True)
class KickEvent:
    state: GameState
    kick: ChosenKick
    kicker: int
    receiver: int
    intersected_zone: bool
    survived_pass_through: bool
    approach_time: float
    travel_time: float
    next_approach_time: float
    ball_end: Point
    result: str

    def to_dict(self) -> dict:
        return {
            "state": self.state.to_dict(),
            "kick": self.kick.to_dict(),
            "kicker": self.kicker,
            "receiver": self.receiver,
            "intersected_zone": self.intersected_zone,
            "survived_pass_through": self.survived_pass_through,
            "approach_time": self.approach_time,
            "travel_time": self.travel_time,
            "next_approach_time": self.next_approach_time,
            "ball_end": list(self.ball_end),
            "result": self.result,
        }

    @classmethod
    def from_dict(cls, d: dict) -> KickEvent:
        return cls(
            GameState.from_dict(d["state"]),
            ChosenKick.from_dict(d["kick"]),
            d["kicker"],
            d["receiver"],
            d["intersected_zone"],
            d["survived_pass_through"],
            d["approach_time"],
            d["travel_time"],
            d["next_approach_time"],
            Point(*d["ball_end"]),
            d["result"],
        )


@dataclass(frozen=True)
class GameRecord:
    layout_id: str
    strategy: str
    outcome: str  # "goal" | "intercepted"
    reason: str
    elapsed: float
    kicks: tuple[KickEvent, ...]
    possession_timesteps: int
    total_timesteps: int
    layout: GameState
    config_hash: str = ""
    field: dict = dc_field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.outcome == "goal"

    @property
    def intersected(self) -> int:
        return sum(1 for k in self.kicks if k.intersected_zone)

    def to_dict(self) -> dict:
        return {
            "format": "kickplan-game-record/1",
            "layout_id": self.layout_id,
            "strategy": self.strategy,
            "outcome": self.outcome,
            "reason": self.reason,
            "elapsed": self.elapsed,
            "possession_timesteps": self.possession_timesteps,
            "total_timesteps": self.total_timesteps,
            "config_hash": self.config_hash,
            "field": self.field,
            "layout": self.layout.to_dict(),
            "kicks": [k.to_dict() for k in self.kicks],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> GameRecord:
        return cls(
            d["layout_id"],
            d["strategy"],
            d["outcome"],
            d["reason"],
            d["elapsed"],
            tuple(KickEvent.from_dict(k) for k in d["kicks"]),
            d["possession_timesteps"],
            d["total_timesteps"],
            GameState.from_dict(d["layout"]),
            d.get("config_hash", ""),
            d.get("field", {}),
        )

    @classmethod
    def loads(cls, text: str) -> GameRecord:
        return cls.from_dict(json.loads(text))


def config_hash(cfg: SimConfig, field: FieldConfig) -> str:
    blob = json.dumps({"sim": asdict(cfg), "field": asdict(field)}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class _Phase:
    duration: float
    ball0: Point
    ball1: Point
    allies: tuple[Point, ...]
    mover: int
    mover0: Point
    mover1: Point


def _lerp(a: Point, b: Point, t: float) -> Point:
    return Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)


def _phases(events: list[KickEvent]) -> list[_Phase]:
    out = []
    for ev in events:
        st = ev.state
        k = ev.kicker
        out.append(_Phase(ev.approach_time, st.ball, st.ball, st.allies, k, st.allies[k], ev.kick.origin))
        after = list(st.allies)
        after[k] = ev.kick.origin
        out.append(_Phase(ev.travel_time, ev.kick.origin, ev.ball_end, tuple(after), -1, ev.kick.origin, ev.kick.origin))
        if ev.result == "continue":
            r = ev.receiver
            out.append(_Phase(ev.next_approach_time, ev.ball_end, ev.ball_end, tuple(after), r, after[r], ev.ball_end))
    return out


def count_possession(events: list[KickEvent], elapsed: float, cfg: SimConfig) -> tuple[int, int]:
    """Sample the game every ``timestep`` and count samples with an ally near the ball."""
    total = max(1, int(math.ceil(elapsed / cfg.timestep - 1e-9)))
    phases = _phases(events)
    owned = 0
    pi, t0 = 0, 0.0
    for n in range(total):
        t = n * cfg.timestep
        while pi < len(phases) - 1 and t >= t0 + phases[pi].duration:
            t0 += phases[pi].duration
            pi += 1
        if not phases:
            break
        ph = phases[pi]
        u = 0.0 if ph.duration <= 0 else min(1.0, (t - t0) / ph.duration)
        ball = _lerp(ph.ball0, ph.ball1, u)
        for i, p in enumerate(ph.allies):
            pos = _lerp(ph.mover0, ph.mover1, u) if i == ph.mover else p
            if pos.dist(ball) <= cfg.possession_radius:
                owned += 1
                break
    return owned, total


def run_game(
    layout: GameState,
    strategy: Strategy,
    cfg: SimConfig,
    rng: Rng,
    field: FieldConfig | None = None,
    layout_id: str = "",
    strategy_name: str = "",
) -> GameRecord:
    field = field or FieldConfig()
    state = layout
    events: list[KickEvent] = []
    outcome, reason = "intercepted", "kick_cap"
    for _ in range(cfg.max_kicks):
        kick = strategy(state)
        if kick is None:
            reason = "no_kick"
            break
        res = resolve_kick(state, kick, cfg, rng, field)
        events.append(
            KickEvent(
                state,
                kick,
                state.kicking_robot,
                res.receiver,
                res.intersected_zone,
                res.survived_pass_through,
                res.approach_time,
                res.travel_time,
                res.next_approach_time,
                res.ball_end,
                res.result,
            )
        )
        if res.result != "continue":
            outcome, reason = res.result, res.reason
            break
        assert res.next_state is not None
        state = res.next_state
    elapsed = 0.0
    for ev in events:
        elapsed += ev.approach_time + ev.travel_time + ev.next_approach_time
    owned, total = count_possession(events, elapsed, cfg)
    return GameRecord(
        layout_id,
        strategy_name,
        outcome,
        reason,
        elapsed,
        tuple(events),
        owned,
        total,
        layout,
        config_hash(cfg, field),
        asdict(field),
    )
