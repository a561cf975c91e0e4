"""Flat ``key = value`` experiment configuration with units in the key names."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .field_graph import FieldConfig
from .state import HEURISTIC_MODES, SimConfig

LAYOUT_TYPES = ("random", "attack")
STRATEGIES = ("forward", "expert", "reactive", "planning")


@dataclass(frozen=True)
class ExperimentConfig:
    layout_type: str = "random"
    num_layouts: int = 100
    strategies: tuple[str, ...] = STRATEGIES
    sim: SimConfig = field(default_factory=SimConfig)
    field: FieldConfig = field(default_factory=FieldConfig)
    out_dir: Path | None = None
    workers: int = 1

    def __post_init__(self):
        if self.layout_type not in LAYOUT_TYPES:
            raise ValueError(f"layout_type must be one of {LAYOUT_TYPES}")
        if self.num_layouts < 1:
            raise ValueError("num_layouts must be >= 1")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        bad = [s for s in self.strategies if s not in STRATEGIES]
        if bad:
            raise ValueError(f"unknown strategies {bad}")
        # canonical order keeps output independent of how the list was written
        object.__setattr__(self, "strategies", tuple(s for s in STRATEGIES if s in self.strategies))

    @property
    def seed(self) -> int:
        return self.sim.rng_seed


def _floats(v: str) -> tuple[float, ...]:
    return tuple(float(x) for x in v.replace(",", " ").split())


def _names(v: str) -> tuple[str, ...]:
    return tuple(x for x in v.replace(",", " ").split())


# key -> (section, attribute, parser)
KEYS = {
    "layout_type": ("exp", "layout_type", str),
    "num_layouts": ("exp", "num_layouts", int),
    "strategies": ("exp", "strategies", _names),
    "workers": ("exp", "workers", int),
    "out_dir": ("exp", "out_dir", Path),
    "seed": ("sim", "rng_seed", int),
    "ball_speed_mps": ("sim", "ball_speed", float),
    "robot_speed_mps": ("sim", "robot_speed", float),
    "kick_radii_m": ("sim", "kick_radii", _floats),
    "penalty_factor": ("sim", "penalty_factor", float),
    "interception_radius_m": ("sim", "interception_radius", float),
    "pass_through_prob": ("sim", "pass_through_prob", float),
    "possession_radius_m": ("sim", "possession_radius", float),
    "timestep_s": ("sim", "timestep", float),
    "heuristic_mode": ("sim", "heuristic_mode", str),
    "teammate_term": ("sim", "teammate_term", str),
    "max_kicks": ("sim", "max_kicks", int),
    "field_length_m": ("field", "length", float),
    "field_width_m": ("field", "width", float),
    "cell_m": ("field", "cell", float),
    "goal_width_m": ("field", "goal_width", float),
}


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """Parse the key-value format. Unknown keys and malformed lines are errors."""
    parts: dict[str, dict] = {"exp": {}, "sim": {}, "field": {}}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{n}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ValueError(f"{source}:{n}: unknown key {key!r}")
        section, attr, conv = KEYS[key]
        try:
            parts[section][attr] = conv(value)
        except ValueError as exc:
            raise ValueError(f"{source}:{n}: bad value for {key}: {value!r}") from exc
    if parts["sim"].get("heuristic_mode", "paper") not in HEURISTIC_MODES:
        raise ValueError(f"{source}: heuristic_mode must be one of {HEURISTIC_MODES}")
    return ExperimentConfig(sim=SimConfig(**parts["sim"]), field=FieldConfig(**parts["field"]), **parts["exp"])


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(path.read_text(), str(path))


def config_lines(cfg: ExperimentConfig, include_paths: bool = False) -> list[str]:
    """Every setting, defaults included, in the same format ``parse_config`` reads."""
    sections = {"exp": cfg, "sim": cfg.sim, "field": cfg.field}
    out = []
    for key, (section, attr, _) in KEYS.items():
        if key in ("out_dir", "workers") and not include_paths:
            continue
        value = getattr(sections[section], attr)
        if value is None:
            continue
        if isinstance(value, tuple):
            value = ", ".join(str(v) for v in value)
        out.append(f"{key} = {value}")
    return out


def with_overrides(cfg: ExperimentConfig, **changes) -> ExperimentConfig:
    sim = {k: v for k, v in changes.items() if k in SimConfig.__dataclass_fields__ and v is not None}
    exp = {k: v for k, v in changes.items() if k in ExperimentConfig.__dataclass_fields__ and v is not None}
    return replace(cfg, sim=replace(cfg.sim, **sim), **exp)
