"""
Attack parameters and the built-in attacker profiles.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, FrozenSet, Mapping, Optional

from ..exceptions import ConfigurationError


@dataclass(frozen=True)
class AttackParameters:
    """
    What an attacker wants and tolerates.

    tolerated_noise maps a sensor category to the largest magnitude the
    attacker accepts; categories absent from the map (or an empty map) are
    unconstrained. portfolio restricts the usable actions by name; when it is
    None every catalog action up to max_skill is available.
    """

    non_traceability: float = 0.0
    tolerated_noise: Mapping[str, float] = field(default_factory=dict)
    expected_success: float = 0.5
    execution_time: float = 3600.0
    zero_dayness: bool = False
    portfolio: Optional[FrozenSet[str]] = None
    max_skill: int = 5
    terminal_on_detect: bool = False

    def __post_init__(self):
        if self.portfolio is not None:
            object.__setattr__(self, "portfolio", frozenset(self.portfolio))
        object.__setattr__(self, "tolerated_noise", {k: float(v) for k, v in sorted(self.tolerated_noise.items())})
        for name in ("non_traceability", "expected_success"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigurationError(f"{name} must be in [0, 1], got {value}")
        if self.execution_time <= 0:
            raise ConfigurationError(f"execution time budget must be positive, got {self.execution_time}")
        for category, limit in self.tolerated_noise.items():
            if limit < 0:
                raise ConfigurationError(f"tolerated noise for {category} must be non-negative, got {limit}")
        if not 1 <= self.max_skill <= 5:
            raise ConfigurationError(f"max skill must be in 1..5, got {self.max_skill}")

    def with_overrides(self, **changes: Any) -> "AttackParameters":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nonTraceability": self.non_traceability,
            "toleratedNoise": dict(self.tolerated_noise),
            "expectedSuccess": self.expected_success,
            "executionTime": self.execution_time,
            "zeroDayness": self.zero_dayness,
            "portfolio": sorted(self.portfolio) if self.portfolio is not None else None,
            "maxSkill": self.max_skill,
            "terminalOnDetect": self.terminal_on_detect,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], base: Optional["AttackParameters"] = None) -> "AttackParameters":
        """Parse camelCase keys; missing keys fall back to base (or the defaults)."""
        base = base or cls()
        portfolio = data.get("portfolio", base.portfolio)
        return cls(
            non_traceability=float(data.get("nonTraceability", base.non_traceability)),
            tolerated_noise=dict(data.get("toleratedNoise", base.tolerated_noise)),
            expected_success=float(data.get("expectedSuccess", base.expected_success)),
            execution_time=float(data.get("executionTime", base.execution_time)),
            zero_dayness=bool(data.get("zeroDayness", base.zero_dayness)),
            portfolio=frozenset(portfolio) if portfolio is not None else None,
            max_skill=int(data.get("maxSkill", base.max_skill)),
            terminal_on_detect=bool(data.get("terminalOnDetect", base.terminal_on_detect)),
        )


@dataclass(frozen=True)
class AttackerProfile:
    name: str
    parameters: AttackParameters

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "parameters": self.parameters.to_dict()}


PROFILE_PRESETS: Dict[str, AttackerProfile] = {
    # No stealth or traceability concern, public tools only.
    "scriptKiddie": AttackerProfile("scriptKiddie", AttackParameters(
        non_traceability=0.0,
        tolerated_noise={},
        expected_success=0.5,
        execution_time=7200.0,
        zero_dayness=False,
        max_skill=1,
        terminal_on_detect=False,
    )),
    "hacker": AttackerProfile("hacker", AttackParameters(
        non_traceability=0.3,
        tolerated_noise={"network-ids": 20.0, "host-log": 20.0},
        expected_success=0.7,
        execution_time=36000.0,
        zero_dayness=False,
        max_skill=3,
        terminal_on_detect=False,
    )),
    # Stealthy but does not hide its origin; being caught ends the engagement.
    "pentester": AttackerProfile("pentester", AttackParameters(
        non_traceability=0.0,
        tolerated_noise={"network-ids": 10.0, "host-log": 10.0},
        expected_success=0.8,
        execution_time=28800.0,
        zero_dayness=False,
        max_skill=4,
        terminal_on_detect=True,
    )),
    "governmentAgency": AttackerProfile("governmentAgency", AttackParameters(
        non_traceability=1.0,
        tolerated_noise={"network-ids": 5.0, "host-log": 5.0},
        expected_success=0.9,
        execution_time=604800.0,
        zero_dayness=True,
        max_skill=5,
        terminal_on_detect=True,
    )),
}


def get_profile(name: str) -> AttackerProfile:
    try:
        return PROFILE_PRESETS[name]
    except KeyError:
        raise ConfigurationError(f"unknown attacker profile '{name}', expected one of {sorted(PROFILE_PRESETS)}") from None
