"""
Path cost algebra and the profile-dependent total order over costs.

A path's cost folds its actions' costs: probabilities and stealthiness
multiply, time triples, hops and noise add, zero-day use ORs.
"""

from dataclasses import dataclass, field, replace
from functools import reduce
from typing import Any, Dict, Iterable, List, Mapping, Tuple, Union

import config.settings as settings

from ..actions import ActionCost, TimeTriple, ZERO_TIME
from ..exceptions import ConfigurationError


@dataclass(frozen=True)
class PathCost:
    success_probability: float = 1.0
    time: TimeTriple = ZERO_TIME
    stealthiness: float = 1.0
    hops: int = 0
    uses_zero_day: bool = False
    # Expected noise per sensor category along the path.
    noise: Mapping[str, float] = field(default_factory=dict)

    @classmethod
    def from_action(cls, cost: ActionCost) -> "PathCost":
        return cls(
            success_probability=cost.success_probability,
            time=cost.time,
            stealthiness=cost.stealthiness,
            hops=cost.hops_added,
            uses_zero_day=cost.zero_day,
            noise=cost.noise_by_category(),
        )

    def combine(self, other: "PathCost") -> "PathCost":
        noise = dict(self.noise)
        for category, magnitude in other.noise.items():
            noise[category] = noise.get(category, 0.0) + magnitude
        return PathCost(
            success_probability=self.success_probability * other.success_probability,
            time=self.time + other.time,
            stealthiness=self.stealthiness * other.stealthiness,
            hops=self.hops + other.hops,
            uses_zero_day=self.uses_zero_day or other.uses_zero_day,
            noise={k: noise[k] for k in sorted(noise)},
        )

    def with_hops(self, hops: int) -> "PathCost":
        return replace(self, hops=hops)

    def with_probability(self, probability: float) -> "PathCost":
        return replace(self, success_probability=min(1.0, max(0.0, probability)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "successProbability": self.success_probability,
            "time": self.time.to_dict(),
            "stealthiness": self.stealthiness,
            "hops": self.hops,
            "usesZeroDay": self.uses_zero_day,
            "noise": {k: self.noise[k] for k in sorted(self.noise)},
        }


IDENTITY = PathCost()

CostLike = Union[ActionCost, PathCost]


def _as_path_cost(cost: CostLike) -> PathCost:
    return cost if isinstance(cost, PathCost) else PathCost.from_action(cost)


def evaluate_path(costs: Iterable[CostLike]) -> PathCost:
    """Fold an ordered sequence of action (or sub-path) costs; the empty path is IDENTITY."""
    return reduce(lambda acc, c: acc.combine(_as_path_cost(c)), costs, IDENTITY)


@dataclass(frozen=True)
class CostWeights:
    failure: float
    time: float
    stealth: float
    hops: float


def weights_for(params: Any) -> CostWeights:
    """
    Scalarization weights for a set of attack parameters. Expected success
    raises the failure weight, non-traceability the hop weight, and a larger
    tolerated noise lowers the stealth weight (no tolerance map: stealth is free).
    """
    tolerated = dict(getattr(params, "tolerated_noise", {}) or {})
    if tolerated:
        stealth = settings.WEIGHT_STEALTH / (1.0 + sum(tolerated.values()) / settings.NOISE_REFERENCE)
    else:
        stealth = 0.0
    return CostWeights(
        failure=settings.WEIGHT_FAILURE * (1.0 + params.expected_success),
        time=settings.WEIGHT_TIME,
        stealth=stealth,
        hops=settings.WEIGHT_HOPS * (1.0 + params.non_traceability),
    )


def scalarize(cost: PathCost, params: Any) -> float:
    if params.execution_time <= 0:
        raise ConfigurationError(f"execution time must be positive, got {params.execution_time}")
    w = weights_for(params)
    value = (
        w.failure * (1.0 - cost.success_probability)
        + w.time * (cost.time.avg / params.execution_time)
        + w.stealth * (1.0 - cost.stealthiness)
        + w.hops * (cost.hops / settings.MAX_HOPS)
    )
    # Dijkstra needs non-negative edge weights.
    return max(0.0, value)


def violations(cost: PathCost, params: Any) -> List[str]:
    """Hard constraints the cost breaks under params; empty when feasible."""
    found = []
    if cost.uses_zero_day and not params.zero_dayness:
        found.append("zero-day")
    if params.expected_success < 1.0:
        for category, limit in sorted((params.tolerated_noise or {}).items()):
            if cost.noise.get(category, 0.0) > limit:
                found.append(f"noise:{category}")
    if cost.time.avg > params.execution_time:
        found.append("time")
    return found


def is_feasible(cost: PathCost, params: Any) -> bool:
    return not violations(cost, params)


def rank_key(cost: PathCost, params: Any, index: int = 0) -> Tuple[bool, float, int]:
    """Infeasible after feasible, then scalar, then catalog declaration order."""
    return (not is_feasible(cost, params), scalarize(cost, params), index)


def rank_costs(c1: PathCost, c2: PathCost, params: Any, index1: int = 0, index2: int = 0) -> int:
    """-1 when c1 ranks before c2, 1 when after, 0 when indistinguishable."""
    k1, k2 = rank_key(c1, params, index1), rank_key(c2, params, index2)
    return (k1 > k2) - (k1 < k2)
