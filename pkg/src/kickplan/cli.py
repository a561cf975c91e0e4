"""Command line: ``kickplan plan | simulate | render``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .config import STRATEGIES, ExperimentConfig, load_config, with_overrides
from .field_graph import FieldConfig, snap_to_vertex
from .report import emit_table, run_experiment, write_trace
from .search import BACKEND, plan_attack
from .simulator import GameRecord
from .state import GameState, SimConfig


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="key = value experiment config file")
    p.add_argument("--kick-radius", type=float, action="append", dest="kick_radii", help="kick length in m (repeatable)")
    p.add_argument("--heuristic-mode", choices=("paper", "admissible"))
    p.add_argument("--seed", type=int)


def _experiment(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    return with_overrides(
        cfg,
        kick_radii=tuple(args.kick_radii) if args.kick_radii else None,
        heuristic_mode=args.heuristic_mode,
        rng_seed=args.seed,
        num_layouts=getattr(args, "layouts", None),
        layout_type=getattr(args, "layout_type", None),
        strategies=tuple(args.strategies) if getattr(args, "strategies", None) else None,
        out_dir=getattr(args, "out_dir", None),
        workers=getattr(args, "workers", None),
    )


def cmd_plan(args) -> int:
    cfg = _experiment(args)
    state = GameState.from_dict(json.loads(Path(args.state).read_text()))
    plan = plan_attack(state, cfg.sim, cfg.field)
    doc = {
        "format": "kickplan-plan/1",
        "backend": BACKEND,
        "start_vertex": list(snap_to_vertex(state.ball, cfg.field)),
        "plan": None if plan is None else plan.to_dict(),
    }
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if plan is not None else 1


def cmd_simulate(args) -> int:
    cfg = _experiment(args)
    if cfg.out_dir is None:
        cfg = replace(cfg, out_dir=Path("results"))
    report, _ = run_experiment(cfg)
    sys.stdout.write(emit_table(report))
    print(f"wrote {cfg.out_dir}/report.json, table.csv and records/", file=sys.stderr)
    return 0


def cmd_render(args) -> int:
    rec = GameRecord.loads(Path(args.record).read_text())
    field = FieldConfig(**rec.field) if rec.field else FieldConfig()
    out = Path(args.out_dir) if args.out_dir else Path(args.record).with_suffix("")
    paths = write_trace(rec, out, field)
    for p in paths:
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kickplan", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="plan an attack for one game state (JSON)")
    p.add_argument("state", help="JSON file with ball, allies, opponents")
    p.add_argument("-o", "--output", help="write the plan here instead of stdout")
    _add_sim_flags(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("simulate", help="run a strategy comparison experiment")
    _add_sim_flags(p)
    p.add_argument("--layouts", type=int, help="number of layouts")
    p.add_argument("--layout-type", choices=("random", "attack"))
    p.add_argument("--strategy", action="append", dest="strategies", choices=STRATEGIES, help="repeatable")
    p.add_argument("--out-dir", type=Path)
    p.add_argument("--workers", type=int, help="worker processes (results are identical)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("render", help="draw one SVG frame per kick of a game record")
    p.add_argument("record", help="game record JSON written by simulate")
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"kickplan: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
