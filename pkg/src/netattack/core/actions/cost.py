"""
Action cost: success probability, running time, noise, stealthiness,
zero-dayness and added hops.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Tuple

from ..exceptions import AssetSchemaError


@dataclass(frozen=True)
class TimeTriple:
    """Minimum, average and maximum running time in simulated seconds."""

    min: float = 0.0
    avg: float = 0.0
    max: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.min <= self.avg <= self.max:
            raise AssetSchemaError(f"time triple must satisfy 0 <= min <= avg <= max, got {self}")

    def __add__(self, other: "TimeTriple") -> "TimeTriple":
        return TimeTriple(self.min + other.min, self.avg + other.avg, self.max + other.max)

    def to_dict(self) -> Dict[str, float]:
        return {"min": self.min, "avg": self.avg, "max": self.max}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TimeTriple":
        return cls(float(data.get("min", 0.0)), float(data.get("avg", 0.0)), float(data.get("max", 0.0)))


ZERO_TIME = TimeTriple()


class CleanupClass(str, Enum):
    UNREMOVABLE = "Unremovable"
    CLEANABLE_ON_SUCCESS = "CleanableOnSuccess"
    CLEANABLE_ALWAYS = "CleanableAlways"


@dataclass(frozen=True)
class NoiseEvent:
    sensor_category: str
    magnitude: float
    cleanup: CleanupClass = CleanupClass.UNREMOVABLE

    def __post_init__(self):
        if self.magnitude < 0:
            raise AssetSchemaError(f"noise magnitude must be non-negative, got {self.magnitude}")
        if not isinstance(self.cleanup, CleanupClass):
            object.__setattr__(self, "cleanup", CleanupClass(self.cleanup))

    def scaled(self, factor: float) -> "NoiseEvent":
        return replace(self, magnitude=self.magnitude * factor)

    def to_dict(self) -> Dict[str, Any]:
        return {"sensorCategory": self.sensor_category, "magnitude": self.magnitude, "cleanup": self.cleanup.value}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "NoiseEvent":
        return cls(
            sensor_category=str(data["sensorCategory"]),
            magnitude=float(data.get("magnitude", 0.0)),
            cleanup=CleanupClass(data.get("cleanup", CleanupClass.UNREMOVABLE.value)),
        )


@dataclass(frozen=True)
class ActionCost:
    """The five cost dimensions of one action, plus the hops it adds to a path."""

    success_probability: float = 1.0
    time: TimeTriple = ZERO_TIME
    noise: Tuple[NoiseEvent, ...] = ()
    stealthiness: float = 1.0
    zero_day: bool = False
    hops_added: int = 0

    def __post_init__(self):
        object.__setattr__(self, "noise", tuple(self.noise))
        if not 0.0 <= self.success_probability <= 1.0:
            raise AssetSchemaError(f"success probability {self.success_probability} outside [0, 1]")
        if not 0.0 <= self.stealthiness <= 1.0:
            raise AssetSchemaError(f"stealthiness {self.stealthiness} outside [0, 1]")
        if self.hops_added < 0:
            raise AssetSchemaError(f"hopsAdded must be non-negative, got {self.hops_added}")

    def with_probability(self, probability: float) -> "ActionCost":
        return replace(self, success_probability=min(1.0, max(0.0, probability)))

    def with_hops(self, hops: int) -> "ActionCost":
        return replace(self, hops_added=hops)

    def noise_by_category(self) -> Dict[str, float]:
        totals: Dict[str, float] = {}
        for event in self.noise:
            totals[event.sensor_category] = totals.get(event.sensor_category, 0.0) + event.magnitude
        return totals

    def to_dict(self) -> Dict[str, Any]:
        return {
            "successProbability": self.success_probability,
            "time": self.time.to_dict(),
            "noise": [n.to_dict() for n in self.noise],
            "stealthiness": self.stealthiness,
            "zeroDay": self.zero_day,
            "hopsAdded": self.hops_added,
        }

    @classmethod
    def from_dict(cls, data: Optional[Mapping[str, Any]]) -> "ActionCost":
        data = data or {}
        return cls(
            success_probability=float(data.get("successProbability", 1.0)),
            time=TimeTriple.from_dict(data.get("time", {})),
            noise=tuple(NoiseEvent.from_dict(n) for n in data.get("noise", [])),
            stealthiness=float(data.get("stealthiness", 1.0)),
            zero_day=bool(data.get("zeroDay", False)),
            hops_added=int(data.get("hopsAdded", 0)),
        )


ZERO_COST = ActionCost()
