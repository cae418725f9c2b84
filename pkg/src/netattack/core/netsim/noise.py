"""
Noise bookkeeping: emitted noise records and the emit/clean ledger.
"""

import ipaddress
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Tuple

from ..actions import NoiseEvent
from .model import Sensor


@dataclass
class NoiseRecord:
    record_id: int
    time: float
    address: ipaddress.IPv4Address
    event: NoiseEvent
    action: str = ""
    cleaned: bool = False


@dataclass(frozen=True)
class LedgerEntry:
    op: str  # "emit" or "clean"
    record_id: int
    time: float
    address: str
    category: str
    magnitude: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "op": self.op,
            "record": self.record_id,
            "time": self.time,
            "address": self.address,
            "category": self.category,
            "magnitude": self.magnitude,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "LedgerEntry":
        return cls(
            op=str(data["op"]),
            record_id=int(data["record"]),
            time=float(data["time"]),
            address=str(data["address"]),
            category=str(data["category"]),
            magnitude=float(data["magnitude"]),
        )


def replay_ledger(sensors: Iterable[Sensor], ledger: Iterable[LedgerEntry]) -> Dict[str, Tuple[float, bool]]:
    """
    Rebuild every sensor's (accumulated, detected) from a ledger, starting from
    fresh copies of the given sensors.
    """
    fresh = [s.reset() for s in sensors]
    for entry in ledger:
        address = ipaddress.IPv4Address(entry.address)
        for sensor in fresh:
            if not sensor.observes(address, entry.category):
                continue
            if entry.op == "emit":
                sensor.accumulate(entry.magnitude, entry.time)
            else:
                sensor.discharge(entry.magnitude)
    return {s.id: (s.accumulated, s.detected) for s in fresh}


def ledger_to_dicts(ledger: List[LedgerEntry]) -> List[Dict[str, Any]]:
    return [e.to_dict() for e in ledger]
