"""Attack-graph construction, path cost algebra, action selection and pivot planning."""

from .costs import (
    IDENTITY,
    CostWeights,
    PathCost,
    evaluate_path,
    is_feasible,
    rank_costs,
    rank_key,
    scalarize,
    violations,
    weights_for,
)
from .graph import ActionNode, AttackGraph, GoalNode, build_graph
from .topology import TopologyView
from .planner import UNREACHABLE, Candidate, PivotHop, PivotPlan, Planner, hypothetical_env

__all__ = [
    "IDENTITY",
    "CostWeights",
    "PathCost",
    "evaluate_path",
    "is_feasible",
    "rank_costs",
    "rank_key",
    "scalarize",
    "violations",
    "weights_for",
    "ActionNode",
    "AttackGraph",
    "GoalNode",
    "build_graph",
    "TopologyView",
    "UNREACHABLE",
    "Candidate",
    "PivotHop",
    "PivotPlan",
    "Planner",
    "hypothetical_env",
]
