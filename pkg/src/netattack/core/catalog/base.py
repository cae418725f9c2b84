"""
Base class and execution context for concrete actions.

Actions run against the simulator only. Every draw comes from the context's
seeded generator, so a run is reproducible bit for bit.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, List, Mapping, Optional, Tuple

import numpy as np

from ..actions import ActionCost, ActionSpec, NoiseEvent, TimeTriple
from ..assets import Asset, EnvironmentKnowledge, satisfies
from ..exceptions import ActionUnavailable
from ..goals import Goal, GoalStatus, Judgement, evaluate
from ..netsim import SimNetwork

if TYPE_CHECKING:
    from ..engine.agents import Agent

NoiseEmission = Tuple[Any, NoiseEvent]


@dataclass
class ActionOutcome:
    success: bool
    produced: List[Asset] = field(default_factory=list)
    noise: List[NoiseEmission] = field(default_factory=list)
    elapsed: float = 0.0
    hops_added: int = 0
    detail: str = ""
    # Indices into SimNetwork.noise_log, filled when the noise is emitted.
    noise_records: List[int] = field(default_factory=list)


@dataclass
class ActionContext:
    """Everything an action may touch while it runs."""

    agent: "Agent"
    env: EnvironmentKnowledge
    net: SimNetwork
    rng: np.random.Generator
    params: Any
    cost: ActionCost
    now: float = 0.0
    fingerprints: Mapping[str, Mapping[str, float]] = field(default_factory=dict)
    planner: Any = None
    # Engine hook used by high-level actions to pursue sub-objectives.
    achieve: Optional[Callable[..., Judgement]] = None


class BaseAction(ABC):
    """
    A concrete action bound to its spec.

    Subclasses implement run() for one concrete asset; execute() wraps it with
    the availability check and elapsed-time sampling.
    """

    def __init__(self, spec: ActionSpec):
        self.spec = spec

    @property
    def name(self) -> str:
        return self.spec.name

    def check_available(self, ctx: ActionContext) -> None:
        if self.spec.base_cost.zero_day and not getattr(ctx.params, "zero_dayness", False):
            raise ActionUnavailable(f"{self.name} spends a zero-day and the attack parameters forbid it")

    @staticmethod
    def sample_elapsed(rng: np.random.Generator, time: TimeTriple) -> float:
        """Triangular over (min, avg, max)."""
        if time.max <= time.min:
            return time.min
        return float(rng.triangular(time.min, time.avg, time.max))

    def execute(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        self.check_available(ctx)
        # Drawn before run() so the generator sequence does not depend on the outcome.
        elapsed = self.sample_elapsed(ctx.rng, ctx.cost.time)
        outcome = self.run(ctx, concrete)
        outcome.elapsed = elapsed
        return outcome

    @abstractmethod
    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        pass

    def noise_at(self, ctx: ActionContext, address: Any, probes: int = 1) -> List[NoiseEmission]:
        return [(address, event) for _ in range(probes) for event in ctx.cost.noise]

    def stamp(self, ctx: ActionContext, asset: Asset) -> Asset:
        return asset.with_values(created_at=ctx.now)

    @staticmethod
    def completes_goal(produced: List[Asset], template: Asset) -> List[Asset]:
        return [a for a in produced if a.probability > 0 and satisfies(a, template)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


def run_quantified(action: BaseAction, ctx: ActionContext, goal: Goal) -> Tuple[Judgement, List[ActionOutcome]]:
    """
    Drive an action over every instantiation of a quantified goal, honoring
    Any/All/AllPossible short-circuiting.
    """
    outcomes: List[ActionOutcome] = []

    def attempt(template: Asset) -> Judgement:
        outcome = action.execute(ctx, template)
        outcomes.append(outcome)
        completed = BaseAction.completes_goal(outcome.produced, template) if outcome.success else []
        status = GoalStatus.SUCCESS if completed else GoalStatus.FAILURE
        return Judgement.leaf(template, status, completed)

    return evaluate(goal, attempt), outcomes
