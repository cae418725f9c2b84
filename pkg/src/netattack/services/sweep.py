"""
Attacker profile sweeps: the same objective against the same network, once per
attacker type, optionally growing each attacker's portfolio one action at a time.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import config.settings as settings

from ..core.actions import ActionSpec
from ..core.engine import AttackerProfile, AttackReport
from ..core.exceptions import ConfigurationError
from ..core.factories.logger_factory import LoggerFactory
from .scenario_service import Scenario

logger = LoggerFactory.get_logger("netattack.sweep")


@dataclass
class SweepRow:
    profile: str
    report: AttackReport
    # Incremental mode: the shortest portfolio prefix reaching undetected success, if any.
    minimal_portfolio: Optional[Tuple[str, ...]] = None
    prefixes_tried: int = 0

    def to_dict(self) -> Dict[str, Any]:
        report = self.report
        row: Dict[str, Any] = {
            "profile": self.profile,
            "verdict": report.verdict.value,
            "objectiveAchieved": report.objective_achieved,
            "detected": bool(report.detections),
            "actions": len(report.timeline),
            "simulatedTime": report.finished_at - report.started_at,
            "finalCost": report.final_cost.to_dict(),
        }
        if self.prefixes_tried:
            row["minimalPortfolio"] = list(self.minimal_portfolio) if self.minimal_portfolio is not None else None
            row["prefixesTried"] = self.prefixes_tried
        return row


@dataclass
class SweepResult:
    scenario: str
    seed: int
    incremental: bool
    rows: List[SweepRow] = field(default_factory=list)

    def row(self, profile: str) -> SweepRow:
        for row in self.rows:
            if row.profile == profile:
                return row
        raise KeyError(profile)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "incremental": self.incremental,
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_text(self) -> str:
        header = f"{'profile':<20} {'verdict':<22} {'actions':>7} {'sim time':>10} {'p(path)':>8}"
        lines = [f"Sweep of '{self.scenario}' (seed {self.seed})", header, "-" * len(header)]
        for row in self.rows:
            r = row.report
            lines.append(
                f"{row.profile:<20} {r.verdict.value:<22} {len(r.timeline):>7} "
                f"{r.finished_at - r.started_at:>10.1f} {r.final_cost.success_probability:>8.3f}"
            )
            if self.incremental:
                found = ", ".join(row.minimal_portfolio) if row.minimal_portfolio is not None else "(none)"
                lines.append(f"{'':20} minimal portfolio: {found}")
        return "\n".join(lines)


def incremental_order(scenario: Scenario, profile: AttackerProfile) -> List[ActionSpec]:
    """The profile's actions, least skilled first, then in catalog order."""
    params = profile.parameters
    specs = scenario.catalog.portfolio(params.portfolio, params.max_skill)
    return sorted(specs, key=lambda s: (s.skill, scenario.catalog.index(s.name)))


def _sweep_one(scenario: Scenario, profile: AttackerProfile, seed: int, incremental: bool) -> SweepRow:
    if not incremental:
        report = scenario.run(profile, seed)
        logger.info(f"📊 {profile.name}: {report.verdict.value}")
        return SweepRow(profile.name, report)

    order = [s.name for s in incremental_order(scenario, profile)]
    report: Optional[AttackReport] = None
    for size in range(1, len(order) + 1):
        prefix = tuple(order[:size])
        trial = AttackerProfile(profile.name, profile.parameters.with_overrides(portfolio=frozenset(prefix)))
        report = scenario.run(trial, seed)
        if report.undetected_success:
            logger.info(f"📊 {profile.name}: undetected success with {size} action(s)")
            return SweepRow(profile.name, report, minimal_portfolio=prefix, prefixes_tried=size)
    logger.info(f"📊 {profile.name}: no portfolio prefix succeeds undetected")
    if report is None:
        report = scenario.run(profile, seed)
    return SweepRow(profile.name, report, minimal_portfolio=None, prefixes_tried=max(1, len(order)))


def sweep_profiles(
    scenario: Scenario,
    seed: int = 0,
    profiles: Optional[Sequence[str]] = None,
    incremental: bool = False,
    workers: int = settings.SWEEP_WORKERS,
) -> SweepResult:
    """
    Run the objective once per profile, each run isolated from the others.

    In incremental mode every profile starts from its single least skilled
    action and gains one action per run; the row records the first prefix
    reaching undetected success and that run's report (else the full
    portfolio's report).
    """
    if workers < 1:
        raise ConfigurationError(f"workers must be at least 1, got {workers}")
    chosen = [scenario.profile(n) for n in profiles] if profiles is not None else list(scenario.profiles)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda p: _sweep_one(scenario, p, seed, incremental), chosen))
    return SweepResult(scenario=scenario.name, seed=seed, incremental=incremental, rows=rows)
