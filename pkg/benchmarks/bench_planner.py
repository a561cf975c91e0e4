"""Time plan_attack with the compiled and pure-Python kernels on the same layouts.

    python3 benchmarks/bench_planner.py --layouts 50 --radius 4 --radius 2
"""

from __future__ import annotations

import argparse
import statistics
import time

from kickplan.field_graph import FieldConfig
from kickplan.search import available_backends, plan_attack
from kickplan.simulator import generate_attack_layout, generate_random_layout
from kickplan.state import SimConfig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--layouts", type=int, default=30)
    ap.add_argument("--radius", type=float, action="append", dest="radii")
    ap.add_argument("--heuristic-mode", default="paper", choices=("paper", "admissible"))
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    field = FieldConfig()
    cfg = SimConfig(kick_radii=tuple(args.radii or (4.0,)), heuristic_mode=args.heuristic_mode)
    states = [generate_random_layout(i, field) for i in range(args.layouts)]
    states += [generate_attack_layout(i, field) for i in range(args.layouts)]
    backends = sorted(available_backends(), key=lambda b: b != "compiled")
    print(f"{len(states)} states, radii {cfg.kick_radii}, mode {cfg.heuristic_mode}, backends {backends}")

    # warm the cached graph tables so neither backend pays for them
    plan_attack(states[0], cfg, field)
    plans, timing = {}, {}
    for b in backends:
        per = []
        for s in states:
            best = min(_timed(s, cfg, field, b) for _ in range(args.repeat))
            per.append(best)
        plans[b] = [plan_attack(s, cfg, field, backend=b) for s in states]
        timing[b] = per
        print(f"{b:>9}: median {1e3 * statistics.median(per):8.2f} ms  total {sum(per):7.2f} s")
    if len(backends) > 1:
        a, b = backends[:2]
        same = all(
            (p is None and q is None) or (p is not None and q is not None and p.to_dict() == q.to_dict())
            for p, q in zip(plans[a], plans[b])
        )
        speedup = statistics.median(x / y for x, y in zip(timing[b], timing[a]))
        print(f"median speedup {a} over {b}: {speedup:.1f}x; identical plans: {same}")
    return 0


def _timed(state, cfg, field, backend) -> float:
    t0 = time.perf_counter()
    plan_attack(state, cfg, field, backend=backend)
    return time.perf_counter() - t0


if __name__ == "__main__":
    raise SystemExit(main())
