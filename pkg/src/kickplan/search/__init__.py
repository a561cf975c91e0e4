"""Attack planner: cost model, heuristic and A* driver."""

from .costs import edge_cost, heuristic, teammate_term, time_to_approach
from .planner import BACKEND, KickPlan, available_backends, heuristic_arrays, plan_attack, search_order_key

__all__ = [
    "BACKEND",
    "KickPlan",
    "available_backends",
    "edge_cost",
    "heuristic",
    "heuristic_arrays",
    "plan_attack",
    "search_order_key",
    "teammate_term",
    "time_to_approach",
]
