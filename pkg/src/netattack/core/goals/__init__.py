"""Quantified goals with lazy iteration and Any/All/AllPossible semantics."""

from .domains import Domain, NetblockDomain, RangeDomain, ValueListDomain
from .goal import Goal, Quantifier, QuantifierType, instantiations
from .evaluation import GoalStatus, Judgement, evaluate, environment_leaf, judge, satisfied_by_environment

__all__ = [
    "Domain",
    "NetblockDomain",
    "RangeDomain",
    "ValueListDomain",
    "Goal",
    "Quantifier",
    "QuantifierType",
    "instantiations",
    "GoalStatus",
    "Judgement",
    "evaluate",
    "environment_leaf",
    "judge",
    "satisfied_by_environment",
]
