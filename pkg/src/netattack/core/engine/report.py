"""
Attack reports: the timeline of one run, its verdict and its realized cost.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..assets import Asset, EnvironmentKnowledge
from ..netsim import LedgerEntry, ledger_to_dicts
from ..planner import IDENTITY, PathCost


class Verdict(str, Enum):
    SUCCESS = "success"
    FAILURE = "failure"
    DETECTED_BEFORE_SUCCESS = "detectedBeforeSuccess"
    BUDGET_EXHAUSTED = "budgetExhausted"


@dataclass
class TimelineEntry:
    time: float
    agent: str
    action: str
    asset: Dict[str, Any]
    success: bool
    produced: List[Dict[str, Any]] = field(default_factory=list)
    noise: Dict[str, float] = field(default_factory=dict)
    elapsed: float = 0.0
    cost: PathCost = IDENTITY
    hops: int = 0
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "time": self.time,
            "agent": self.agent,
            "action": self.action,
            "asset": self.asset,
            "success": self.success,
            "produced": self.produced,
            "noise": self.noise,
            "elapsed": self.elapsed,
            "cost": self.cost.to_dict(),
            "hops": self.hops,
            "detail": self.detail,
        }


@dataclass
class AttackReport:
    profile: str
    seed: int
    objective: Dict[str, Any]
    verdict: Verdict = Verdict.FAILURE
    objective_achieved: bool = False
    timeline: List[TimelineEntry] = field(default_factory=list)
    detections: List[Tuple[str, float]] = field(default_factory=list)
    # Goals decided from stored knowledge alone, at zero cost.
    shortcuts: List[Dict[str, Any]] = field(default_factory=list)
    final_cost: PathCost = IDENTITY
    assets_gained: List[Asset] = field(default_factory=list)
    noise_ledger: List[LedgerEntry] = field(default_factory=list)
    sensors: List[Dict[str, Any]] = field(default_factory=list)
    agents: List[Dict[str, Any]] = field(default_factory=list)
    started_at: float = 0.0
    finished_at: float = 0.0
    success_time: Optional[float] = None
    halt_reason: str = ""
    # Root agent knowledge at the end of the run; not serialized.
    knowledge: Optional[EnvironmentKnowledge] = field(default=None, repr=False, compare=False)

    @property
    def detected_before_success(self) -> bool:
        if not self.detections:
            return False
        if self.success_time is None:
            return True
        return any(t <= self.success_time for _, t in self.detections)

    @property
    def undetected_success(self) -> bool:
        return self.objective_achieved and not self.detected_before_success

    def to_dict(self) -> Dict[str, Any]:
        return {
            "profile": self.profile,
            "seed": self.seed,
            "objective": self.objective,
            "verdict": self.verdict.value,
            "objectiveAchieved": self.objective_achieved,
            "timeline": [e.to_dict() for e in self.timeline],
            "detections": [{"sensor": s, "time": t} for s, t in self.detections],
            "shortcuts": self.shortcuts,
            "finalCost": self.final_cost.to_dict(),
            "assetsGained": [a.to_dict() for a in self.assets_gained],
            "noiseLedger": ledger_to_dicts(self.noise_ledger),
            "sensors": self.sensors,
            "agents": self.agents,
            "startedAt": self.started_at,
            "finishedAt": self.finished_at,
            "successTime": self.success_time,
            "haltReason": self.halt_reason,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def to_text(self) -> str:
        lines = [
            f"Attack report: profile={self.profile} seed={self.seed}",
            f"Verdict: {self.verdict.value}" + (f" ({self.halt_reason})" if self.halt_reason else ""),
            f"Simulated time: {self.started_at:.1f}s -> {self.finished_at:.1f}s",
            "",
            "Timeline:",
        ]
        if not self.timeline:
            lines.append("  (no actions executed)")
        for entry in self.timeline:
            status = "ok  " if entry.success else "FAIL"
            noise = ", ".join(f"{k}={v:g}" for k, v in sorted(entry.noise.items()))
            lines.append(f"  t={entry.time:9.1f}  {status}  {entry.agent:<22} {entry.action:<30} {entry.detail}")
            if noise:
                lines.append(f"{'':16}noise: {noise}")
        if self.shortcuts:
            lines.append("")
            lines.append(f"Decided from knowledge: {len(self.shortcuts)} goal(s)")
        lines.append("")
        if self.detections:
            lines.append("Detections:")
            lines.extend(f"  {sensor} at t={time:.1f}" for sensor, time in self.detections)
        else:
            lines.append("Detections: none")
        cost = self.final_cost
        lines.append("")
        lines.append(
            f"Realized path: p={cost.success_probability:.4f} stealth={cost.stealthiness:.4f} "
            f"time(avg)={cost.time.avg:.1f}s hops={cost.hops} zero-day={'yes' if cost.uses_zero_day else 'no'}"
        )
        lines.append(f"Assets gained: {len(self.assets_gained)}, agents: {len(self.agents)}")
        return "\n".join(lines)
