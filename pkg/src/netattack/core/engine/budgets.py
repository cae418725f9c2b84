"""
Budget enforcement between actions.
"""

from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Tuple

from .parameters import AttackParameters
from .report import Verdict


@dataclass
class BudgetState:
    """What the budgets look at: elapsed simulated time, uncleaned noise, detections."""

    started_at: float
    clock: float
    noise: Mapping[str, float] = field(default_factory=dict)
    detections: List[Tuple[str, float]] = field(default_factory=list)

    @property
    def elapsed(self) -> float:
        return self.clock - self.started_at


@dataclass(frozen=True)
class BudgetDecision:
    halt: bool
    verdict: Optional[Verdict] = None
    reason: str = ""


CONTINUE = BudgetDecision(halt=False)


def enforce_budgets(state: BudgetState, params: AttackParameters) -> BudgetDecision:
    if state.elapsed > params.execution_time:
        return BudgetDecision(True, Verdict.BUDGET_EXHAUSTED,
                              f"time {state.elapsed:.1f}s over budget {params.execution_time:.1f}s")
    # An attacker who must succeed keeps going whatever the noise.
    if params.expected_success < 1.0:
        for category, limit in sorted(params.tolerated_noise.items()):
            level = state.noise.get(category, 0.0)
            if level > limit:
                return BudgetDecision(True, Verdict.BUDGET_EXHAUSTED,
                                      f"{category} noise {level:g} over tolerated {limit:g}")
    if state.detections and params.terminal_on_detect:
        sensor, time = state.detections[0]
        return BudgetDecision(True, Verdict.DETECTED_BEFORE_SUCCESS, f"detected by {sensor} at t={time:.1f}")
    return CONTINUE
