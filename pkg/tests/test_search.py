import math
import random
from dataclasses import replace

import numpy as np
import pytest

from kickplan.field_graph import (
    FieldConfig,
    GoalTarget,
    KickEdge,
    VertexId,
    all_successors,
    snap_to_vertex,
    vertex_center,
    vertex_index,
)
from kickplan.geometry import Disk, Point, Segment, segment_intersects_disk
from kickplan.search import (
    available_backends,
    edge_cost,
    heuristic,
    plan_attack,
    time_to_approach,
)
from kickplan.simulator import generate_random_layout
from kickplan.state import GameState, SimConfig

from oracles import cost_to_goal


def ring_edge(a, b):
    s = Segment(Point(*a), Point(*b))
    return KickEdge(VertexId(0, 0), VertexId(0, 1), s, s.length, False, s.length)


def test_time_to_approach(cfg):
    assert time_to_approach(Point(1, 1), Point(1, 1), cfg) == 0
    assert time_to_approach(Point(0, 0), Point(1, 0), replace(cfg, robot_speed=0.25)) == 4.0
    rng = random.Random(1)
    for _ in range(100):
        a = Point(rng.uniform(0, 6), rng.uniform(0, 9))
        b = Point(rng.uniform(0, 6), rng.uniform(0, 9))
        slow = time_to_approach(a, b, cfg)
        fast = time_to_approach(a, b, replace(cfg, robot_speed=2 * cfg.robot_speed))
        assert fast == pytest.approx(slow / 2, abs=1e-9)


def test_edge_cost_examples(cfg):
    e = ring_edge((1.0, 1.0), (1.0, 5.0))
    state = GameState(Point(1.0, 1.0), (Point(1.0, 1.0),), ())
    assert edge_cost(e, state, False, cfg) == 2.0
    assert edge_cost(e, state, True, cfg) == 2.0
    blocked = GameState(Point(1.0, 1.0), (Point(1.0, 1.0),), (Point(1.05, 3.0),))
    assert edge_cost(e, blocked, True, cfg) == 4.0
    # the penalty only applies to the first kick
    assert edge_cost(e, blocked, False, cfg) == 2.0


def test_edge_cost_adds_approach(cfg):
    e = ring_edge((1.0, 1.0), (1.0, 5.0))
    state = GameState(Point(1.0, 1.0), (Point(1.0, 0.0),), (Point(1.0, 3.0),))
    assert edge_cost(e, state, True, cfg) == pytest.approx(1.0 / 0.25 + 2.0 * 2.0)


def test_heuristic_examples(field, cfg):
    state = GameState(Point(3.0, 1.0), (Point(3.0, 1.0), Point(3.0, 4.0)), ())
    adm = replace(cfg, heuristic_mode="admissible")
    assert heuristic(Point(3.0, 9.0), state, False, adm, field) == 0
    assert heuristic(Point(3.0, 5.0), state, True, adm, field) == pytest.approx(2.0)
    # other ally 1 m away walks 4 s; straight-line part 2 s
    assert heuristic(Point(3.0, 5.0), state, True, cfg, field) == pytest.approx(6.0)
    assert heuristic(Point(3.0, 5.0), state, False, cfg, field) == pytest.approx(2.0)


def _check_plan(plan, field):
    assert plan.kicks
    assert plan.kicks[-1].is_goal
    assert not any(k.is_goal for k in plan.kicks[:-1])
    for a, b in zip(plan.kicks, plan.kicks[1:]):
        assert a.target == b.source


def test_one_kick_plan_in_front_of_goal(field, cfg):
    ball = Point(3.0, field.length - 3.9)
    state = GameState(ball, (ball,), ())
    plan = plan_attack(state, cfg, field)
    assert len(plan.kicks) == 1 and plan.kicks[0].is_goal


def test_own_half_needs_two_kicks(field, cfg):
    ball = Point(3.0, 1.0)
    plan = plan_attack(GameState(ball, (ball,), ()), cfg, field)
    _check_plan(plan, field)
    assert len(plan.kicks) >= 2


def test_no_plan_on_degenerate_field():
    # two columns, a pin-hole goal between them, and a ring that leaves the field
    narrow = FieldConfig(length=3.0, width=0.2, cell=0.1, goal_width=0.001)
    ball = Point(0.05, 1.55)
    state = GameState(ball, (ball,), ())
    assert all_successors(snap_to_vertex(ball, narrow), (2.0,), narrow) == []
    for backend in available_backends():
        assert plan_attack(state, SimConfig(kick_radii=(2.0,)), narrow, backend=backend) is None


def random_states(n, seed):
    out = []
    for i in range(n):
        out.append(generate_random_layout(seed * 1000 + i))
    return out


@pytest.fixture(scope="module")
def goal_costs(field):
    cfg = SimConfig()
    return {r: cost_to_goal(field, (r,), cfg.ball_speed) for r in (2.0, 4.0)}


def oracle_optimum(state, cfg, field, to_goal):
    start = snap_to_vertex(state.ball, field)
    best = math.inf
    for e in all_successors(start, cfg.kick_radii, field):
        c = edge_cost(e, state, True, cfg)
        if not e.is_goal:
            c += to_goal[vertex_index(e.target, field)]
        best = min(best, c)
    return best


@pytest.mark.parametrize("r_kick", [2.0, 4.0])
def test_admissible_plan_is_optimal(field, goal_costs, r_kick):
    cfg = SimConfig(kick_radii=(r_kick,), heuristic_mode="admissible")
    for state in random_states(20, int(r_kick)):
        plan = plan_attack(state, cfg, field)
        _check_plan(plan, field)
        assert plan.total_cost == pytest.approx(oracle_optimum(state, cfg, field, goal_costs[r_kick]), abs=1e-9)


def test_admissible_heuristic_is_lower_bound(field, goal_costs):
    rng = random.Random(4)
    state = GameState(Point(3, 1), (Point(3, 1),), ())
    for r, to_goal in goal_costs.items():
        cfg = SimConfig(kick_radii=(r,), heuristic_mode="admissible")
        for _ in range(100):
            i = rng.randrange(field.n_vertices)
            p = vertex_center(VertexId(i % field.ncols, i // field.ncols), field)
            assert heuristic(p, state, False, cfg, field) <= to_goal[i] + 1e-12


def test_first_kick_penalty_in_total(field, cfg):
    for state in random_states(15, 9):
        plan = plan_attack(state, cfg, field)
        _check_plan(plan, field)
        first = plan.kicks[0]
        blocked = any(
            segment_intersects_disk(first.segment, Disk(o, cfg.interception_radius)) for o in state.opponents
        )
        approach = time_to_approach(state.kicker, first.segment.a, cfg)
        travel = first.length / cfg.ball_speed
        expected_first = approach + travel * (cfg.penalty_factor if blocked else 1.0)
        rest = sum(k.length / cfg.ball_speed for k in plan.kicks[1:])
        assert plan.total_cost == pytest.approx(expected_first + rest, abs=1e-9)


def test_removing_opponents_never_raises_cost(field):
    cfg = SimConfig(heuristic_mode="admissible")
    for state in random_states(10, 3):
        with_opp = plan_attack(state, cfg, field).total_cost
        without = plan_attack(replace(state, opponents=()), cfg, field).total_cost
        assert without <= with_opp + 1e-12


def test_plan_is_deterministic(field, cfg):
    state = random_states(1, 21)[0]
    assert plan_attack(state, cfg, field) == plan_attack(state, cfg, field)


def test_mixed_radii_plan(field):
    cfg = SimConfig(kick_radii=(2.0, 4.0), heuristic_mode="admissible")
    state = random_states(1, 8)[0]
    plan = plan_attack(state, cfg, field)
    _check_plan(plan, field)
    for k in plan.kicks:
        if not k.is_goal:
            assert abs(k.length - k.radius) <= field.cell / 2 + 1e-9


@pytest.mark.skipif("compiled" not in available_backends(), reason="extension not built")
@pytest.mark.parametrize("mode", ["paper", "admissible"])
@pytest.mark.parametrize("radii", [(2.0,), (4.0,), (2.0, 4.0)])
def test_backends_agree(field, mode, radii):
    cfg = SimConfig(kick_radii=radii, heuristic_mode=mode)
    for state in random_states(4, 40):
        assert plan_attack(state, cfg, field, backend="python") == plan_attack(state, cfg, field, backend="compiled")


def test_first_kick_teammate_option_changes_only_first_endpoints(field):
    state = random_states(1, 2)[0]
    every = SimConfig()
    first = SimConfig(teammate_term="first_kick")
    from kickplan.search import heuristic_arrays

    hb_e, hf_e = heuristic_arrays(state, every, field)
    hb_f, hf_f = heuristic_arrays(state, first, field)
    assert np.array_equal(hf_e, hf_f)
    assert np.array_equal(hb_e, hf_e)
    assert np.all(hb_f <= hf_f)
    _check_plan(plan_attack(state, first, field), field)
