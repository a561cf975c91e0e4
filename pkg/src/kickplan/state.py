"""World snapshot and run-time configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .geometry import Point

HEURISTIC_MODES = ("paper", "admissible")
TEAMMATE_TERMS = ("every_kick", "first_kick")


@dataclass(frozen=True)
class SimConfig:
    """Speeds, kick radii and interception parameters.

    ``ball_speed``, ``robot_speed``, ``possession_radius`` and ``timestep`` are
    free parameters of the model; the remaining defaults are the published ones.

    ``teammate_term`` picks where the paper-mode heuristic adds the walk of the
    nearest idle teammate: at the endpoint of every kick, or only at endpoints
    of the first kick. With ``first_kick`` the re-planning attacker can pass
    back and forth between two robots indefinitely.
    """

    ball_speed: float = 2.0
    robot_speed: float = 0.25
    kick_radii: tuple[float, ...] = (4.0,)
    penalty_factor: float = 2.0
    interception_radius: float = 0.2
    pass_through_prob: float = 0.5
    possession_radius: float = 0.5
    timestep: float = 0.1
    heuristic_mode: str = "paper"
    teammate_term: str = "every_kick"
    rng_seed: int = 0
    max_kicks: int = 50

    def __post_init__(self):
        radii = tuple(sorted({float(r) for r in self.kick_radii}))
        object.__setattr__(self, "kick_radii", radii)
        if not radii or min(radii) <= 0:
            raise ValueError("kick_radii must be a non-empty set of positive lengths")
        if self.ball_speed <= 0 or self.robot_speed <= 0:
            raise ValueError("speeds must be positive")
        if self.penalty_factor < 1:
            raise ValueError("penalty_factor must be >= 1")
        if not 0.0 <= self.pass_through_prob <= 1.0:
            raise ValueError("pass_through_prob must lie in [0, 1]")
        if self.interception_radius <= 0 or self.possession_radius < 0 or self.timestep <= 0:
            raise ValueError("radii and timestep must be positive")
        if self.heuristic_mode not in HEURISTIC_MODES:
            raise ValueError(f"heuristic_mode must be one of {HEURISTIC_MODES}")
        if self.teammate_term not in TEAMMATE_TERMS:
            raise ValueError(f"teammate_term must be one of {TEAMMATE_TERMS}")
        if self.max_kicks < 1:
            raise ValueError("max_kicks must be >= 1")


def nearest_index(points: Sequence[Point], target: Point) -> int:
    best, best_d = 0, float("inf")
    for i, p in enumerate(points):
        d = p.dist(target)
        if d < best_d:
            best, best_d = i, d
    return best


@dataclass(frozen=True)
class GameState:
    ball: Point
    allies: tuple[Point, ...]
    opponents: tuple[Point, ...]
    kicking_robot: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "ball", Point(*self.ball))
        object.__setattr__(self, "allies", tuple(Point(*p) for p in self.allies))
        object.__setattr__(self, "opponents", tuple(Point(*p) for p in self.opponents))
        if not self.allies:
            raise ValueError("at least one ally is required")
        if self.kicking_robot == -1:
            object.__setattr__(self, "kicking_robot", nearest_index(self.allies, self.ball))
        elif not 0 <= self.kicking_robot < len(self.allies):
            raise ValueError("kicking_robot out of range")

    @property
    def kicker(self) -> Point:
        return self.allies[self.kicking_robot]

    def to_dict(self) -> dict:
        return {
            "ball": list(self.ball),
            "allies": [list(p) for p in self.allies],
            "opponents": [list(p) for p in self.opponents],
            "kicking_robot": self.kicking_robot,
        }

    @classmethod
    def from_dict(cls, d: dict) -> GameState:
        return cls(
            Point(*d["ball"]),
            tuple(Point(*p) for p in d["allies"]),
            tuple(Point(*p) for p in d.get("opponents", ())),
            d.get("kicking_robot", -1),
        )
