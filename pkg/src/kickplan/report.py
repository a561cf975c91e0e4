"""Experiment orchestration, metric aggregation and artifact output."""

from __future__ import annotations

import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import STRATEGIES, ExperimentConfig, config_lines
from .field_graph import FieldConfig
from .geometry import Point, clip_segment_to_rect
from .simulator import (
    GAME_STREAM,
    GameRecord,
    Rng,
    generate_attack_layout,
    generate_random_layout,
    run_game,
)
from .state import GameState, SimConfig
from .strategies import build_expert_table, make_strategy

TABLE_COLUMNS = {"forward": "Forward", "expert": "Expert", "reactive": "Reactive", "planning": "Planning"}
TABLE_ROWS = (
    ("success_rate", "Success rate", 2),
    ("mean_time", "Time s", 1),
    ("mean_kicks", "Kicks number", 1),
    ("possession_pct", "Ball poss. %", 2),
    ("intersected", "Intersected", 0),
)


def layout_seed(master: int, index: int) -> int:
    return int(np.random.SeedSequence([master, index]).generate_state(1, dtype=np.uint64)[0] >> 1)


def make_layout(layout_type: str, master: int, index: int, field: FieldConfig) -> GameState:
    gen = generate_random_layout if layout_type == "random" else generate_attack_layout
    return gen(layout_seed(master, index), field)


@lru_cache(maxsize=None)
def _strategy(name: str, sim: SimConfig, field: FieldConfig):
    table = build_expert_table(field, sim) if name == "expert" else None
    return make_strategy(name, sim, field, table)


def play(cfg: ExperimentConfig, index: int, strategy: str, layout: GameState | None = None) -> GameRecord:
    """One game; its RNG stream depends only on (seed, layout index, strategy)."""
    if layout is None:
        layout = make_layout(cfg.layout_type, cfg.seed, index, cfg.field)
    rng = Rng(cfg.seed, index, STRATEGIES.index(strategy), GAME_STREAM)
    return run_game(
        layout,
        _strategy(strategy, cfg.sim, cfg.field),
        cfg.sim,
        rng,
        cfg.field,
        layout_id=f"{cfg.layout_type}-{index:03d}",
        strategy_name=strategy,
    )


def _play_args(args) -> GameRecord:
    return play(*args)


@dataclass(frozen=True)
class StrategyMetrics:
    name: str
    games: int
    successes: int
    success_rate: float
    mean_time: float | None
    mean_kicks: float | None
    possession_pct: float | None
    intersected: int
    times: tuple[float, ...]
    kicks: tuple[int, ...]
    possession: tuple[float, ...]
    common_mean_time: float | None = None
    common_mean_kicks: float | None = None
    common_possession_pct: float | None = None


@dataclass(frozen=True)
class MetricsReport:
    header: tuple[str, ...]
    strategies: tuple[StrategyMetrics, ...]
    common_success_layouts: int

    def get(self, name: str) -> StrategyMetrics:
        for s in self.strategies:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "format": "kickplan-report/1",
            "config": list(self.header),
            "common_success_layouts": self.common_success_layouts,
            "strategies": {
                s.name: {
                    "games": s.games,
                    "successes": s.successes,
                    "success_rate": s.success_rate,
                    "mean_time_s": s.mean_time,
                    "mean_kicks": s.mean_kicks,
                    "possession_pct": s.possession_pct,
                    "intersected": s.intersected,
                    "common_mean_time_s": s.common_mean_time,
                    "common_mean_kicks": s.common_mean_kicks,
                    "common_possession_pct": s.common_possession_pct,
                    "times_s": list(s.times),
                    "kicks": list(s.kicks),
                    "possession_pct_per_game": list(s.possession),
                }
                for s in self.strategies
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"


def _mean(xs):
    return statistics.fmean(xs) if xs else None


def aggregate(records: dict[str, list[GameRecord]], header: tuple[str, ...] = ()) -> MetricsReport:
    """Means over successful games only; Intersected is summed over every game."""
    wins = {name: {r.layout_id for r in recs if r.success} for name, recs in records.items()}
    common = set.intersection(*wins.values()) if wins else set()
    out = []
    for name in STRATEGIES:
        if name not in records:
            continue
        recs = records[name]
        good = [r for r in recs if r.success]
        shared = [r for r in good if r.layout_id in common]

        def poss(r):
            return 100.0 * r.possession_timesteps / r.total_timesteps

        out.append(
            StrategyMetrics(
                name,
                len(recs),
                len(good),
                len(good) / len(recs) if recs else 0.0,
                _mean([r.elapsed for r in good]),
                _mean([len(r.kicks) for r in good]),
                _mean([poss(r) for r in good]),
                sum(r.intersected for r in recs),
                tuple(r.elapsed for r in good),
                tuple(len(r.kicks) for r in good),
                tuple(poss(r) for r in good),
                _mean([r.elapsed for r in shared]),
                _mean([len(r.kicks) for r in shared]),
                _mean([poss(r) for r in shared]),
            )
        )
    return MetricsReport(tuple(header), tuple(out), len(common))


def run_games(cfg: ExperimentConfig, layouts: Sequence[GameState] | None = None) -> dict[str, list[GameRecord]]:
    """Every strategy on every layout; explicit ``layouts`` replace generated ones."""
    if layouts is not None:
        jobs = [(cfg, i, s, lay) for s in cfg.strategies for i, lay in enumerate(layouts)]
    else:
        jobs = [(cfg, i, s, None) for s in cfg.strategies for i in range(cfg.num_layouts)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_play_args, jobs, chunksize=8))
    else:
        results = [_play_args(j) for j in jobs]
    records: dict[str, list[GameRecord]] = {s: [] for s in cfg.strategies}
    for (_, _, s, _), rec in zip(jobs, results):
        records[s].append(rec)
    return records


def run_experiment(
    cfg: ExperimentConfig, layouts: Sequence[GameState] | None = None
) -> tuple[MetricsReport, dict[str, list[GameRecord]]]:
    records = run_games(cfg, layouts)
    report = aggregate(records, tuple(config_lines(cfg)))
    if cfg.out_dir is not None:
        write_outputs(cfg.out_dir, report, records)
    return report, records


def write_outputs(out_dir: Path, report: MetricsReport, records: dict[str, list[GameRecord]]) -> None:
    out_dir = Path(out_dir)
    rec_dir = out_dir / "records"
    try:
        rec_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.json").write_text(report.dumps())
        (out_dir / "table.csv").write_text(emit_table(report))
        for recs in records.values():
            for r in recs:
                (rec_dir / f"{r.layout_id}_{r.strategy}.json").write_text(r.dumps())
    except OSError as exc:
        raise OSError(f"cannot write experiment output under {out_dir}: {exc}") from exc


# ---------------------------------------------------------------------------
# Table


def _cell(value, decimals: int) -> str:
    if value is None:
        return "-"
    if decimals == 0:
        return str(int(value))
    return f"{value:.{decimals}f}"


def emit_table(report: MetricsReport) -> str:
    """Comma-separated table with strategies as columns in the fixed order."""
    lines = ["# kickplan table v1"]
    lines += [f"# {h}" for h in report.header]
    names = [s.name for s in report.strategies]
    lines.append(",".join(["metric"] + [TABLE_COLUMNS[n] for n in names]))
    for attr, label, decimals in TABLE_ROWS:
        lines.append(",".join([label] + [_cell(getattr(s, attr), decimals) for s in report.strategies]))
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> dict[str, dict[str, float | None]]:
    """Inverse of :func:`emit_table` at the table's printed precision."""
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    head = rows[0].split(",")
    names = {v: k for k, v in TABLE_COLUMNS.items()}
    cols = [names[h] for h in head[1:]]
    labels = {label: attr for attr, label, _ in TABLE_ROWS}
    out: dict[str, dict[str, float | None]] = {c: {} for c in cols}
    for row in rows[1:]:
        cells = row.split(",")
        attr = labels[cells[0]]
        for c, v in zip(cols, cells[1:]):
            out[c][attr] = None if v == "-" else float(v)
    return out


# ---------------------------------------------------------------------------
# Trace rendering

PX_PER_M = 60.0
ALLY_COLOR = "#1f5fbf"
OPPONENT_COLOR = "#c0392b"


def render_trace(
    record: GameRecord,
    field: FieldConfig | None = None,
    margin: float = 0.5,
    interception_radius: float = 0.2,
) -> list[str]:
    """One SVG document per kick; everything is clipped to the field plus ``margin``."""
    field = field or (FieldConfig(**record.field) if record.field else FieldConfig())
    lo_x, lo_y = -margin, -margin
    hi_x, hi_y = field.width + margin, field.length + margin
    w = (hi_x - lo_x) * PX_PER_M
    h = (hi_y - lo_y) * PX_PER_M

    def px(p: Point) -> tuple[float, float]:
        return round((p.x - lo_x) * PX_PER_M, 2), round((hi_y - p.y) * PX_PER_M, 2)

    def line(a: Point, b: Point, style: str) -> str:
        clipped = clip_segment_to_rect(a, b, lo_x, lo_y, hi_x, hi_y)
        if clipped is None:
            return ""
        (x1, y1), (x2, y2) = px(clipped[0]), px(clipped[1])
        return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>'

    def circle(c: Point, r: float, style: str) -> str:
        x, y = px(c)
        return f'<circle cx="{x}" cy="{y}" r="{round(r * PX_PER_M, 2)}" {style}/>'

    radius = interception_radius
    frames = []
    path: list[tuple[Point, Point]] = []
    for n, ev in enumerate(record.kicks):
        st = ev.state
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
            f'viewBox="0 0 {w:.2f} {h:.2f}">',
            '<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto">'
            '<path d="M0,0 L6,3 L0,6 z" fill="#222"/></marker></defs>',
            f'<title>{record.layout_id} {record.strategy} kick {n + 1}/{len(record.kicks)}: {ev.result}</title>',
            f'<rect x="0" y="0" width="{w:.2f}" height="{h:.2f}" fill="#2e7d32"/>',
        ]
        x0, y0 = px(Point(0.0, field.length))
        parts.append(
            f'<rect x="{x0}" y="{y0}" width="{field.width * PX_PER_M:.2f}" '
            f'height="{field.length * PX_PER_M:.2f}" fill="none" stroke="white" stroke-width="2"/>'
        )
        parts.append(line(Point(0.0, field.length / 2), Point(field.width, field.length / 2), 'stroke="white"'))
        for gy in (0.0, field.length):
            parts.append(line(Point(field.post_left, gy), Point(field.post_right, gy), 'stroke="yellow" stroke-width="5"'))
        for a, b in path:
            parts.append(line(a, b, 'stroke="#f5f5f5" stroke-dasharray="4 3"'))
        for o in st.opponents:
            parts.append(circle(o, radius, f'fill="{OPPONENT_COLOR}" fill-opacity="0.25" stroke="{OPPONENT_COLOR}" stroke-dasharray="3 2"'))
            parts.append(circle(o, 0.1, f'fill="{OPPONENT_COLOR}"'))
        for i, a in enumerate(st.allies):
            stroke = ' stroke="black" stroke-width="2"' if i == ev.kicker else ""
            parts.append(circle(a, 0.1, f'fill="{ALLY_COLOR}"{stroke}'))
        parts.append(circle(st.ball, 0.1, 'fill="white" stroke="black"'))
        parts.append(line(ev.kick.segment.a, ev.kick.segment.b, 'stroke="#222" stroke-width="3" marker-end="url(#head)"'))
        parts.append("</svg>")
        frames.append("\n".join(p for p in parts if p) + "\n")
        path.append((ev.kick.origin, ev.ball_end))
    return frames


def write_trace(record: GameRecord, out_dir: Path, field: FieldConfig | None = None) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for n, svg in enumerate(render_trace(record, field), 1):
        p = out_dir / f"{record.layout_id}_{record.strategy}_{n:02d}.svg"
        p.write_text(svg)
        paths.append(p)
    return paths
