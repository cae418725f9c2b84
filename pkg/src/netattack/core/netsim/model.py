"""
Ground-truth building blocks of the simulated network.
"""

import ipaddress
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Mapping, Optional

from ..exceptions import ConfigurationError


@dataclass(frozen=True)
class Service:
    banner: str = ""
    application: str = ""
    version: str = ""
    open: bool = True
    vulnerabilities: FrozenSet[str] = frozenset()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "banner": self.banner,
            "application": self.application,
            "version": self.version,
            "open": self.open,
            "vulnerabilities": sorted(self.vulnerabilities),
        }


@dataclass(frozen=True)
class SimHost:
    """
    A simulated host. Vulnerabilities hang off services, so every
    vulnerability references an application present on the host.
    """

    address: ipaddress.IPv4Address
    os_name: str = ""
    os_version: str = ""
    ports: Mapping[int, Service] = field(default_factory=dict)

    @property
    def vulnerabilities(self) -> FrozenSet[str]:
        found: FrozenSet[str] = frozenset()
        for service in self.ports.values():
            found = found | service.vulnerabilities
        return found

    def service(self, port: int) -> Optional[Service]:
        return self.ports.get(int(port))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "address": str(self.address),
            "os": {"name": self.os_name, "version": self.os_version},
            "ports": {str(p): s.to_dict() for p, s in sorted(self.ports.items())},
        }


class Verdict(str, Enum):
    ALLOW = "Allow"
    DENY = "Deny"


@dataclass(frozen=True)
class FirewallRule:
    source: ipaddress.IPv4Network
    destination: ipaddress.IPv4Network
    verdict: Verdict
    priority: int = 100
    # None is the wildcard port.
    port: Optional[int] = None

    def matches(self, source: ipaddress.IPv4Address, target: ipaddress.IPv4Address) -> bool:
        return source in self.source and target in self.destination

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": str(self.source),
            "destination": str(self.destination),
            "port": self.port,
            "verdict": self.verdict.value,
            "priority": self.priority,
        }


@dataclass
class Sensor:
    """An IDS sensor. Detection latches once accumulated reaches the threshold."""

    id: str
    category: str
    placement: ipaddress.IPv4Network
    threshold: float
    accumulated: float = 0.0
    detected: bool = False
    detected_at: Optional[float] = None

    def __post_init__(self):
        if self.threshold <= 0:
            raise ConfigurationError(f"sensor {self.id}: threshold must be positive")

    def observes(self, address: ipaddress.IPv4Address, category: str) -> bool:
        return category == self.category and address in self.placement

    def accumulate(self, magnitude: float, time: Optional[float] = None) -> bool:
        """Add noise; True only on the call that crosses the threshold."""
        self.accumulated += magnitude
        if not self.detected and self.accumulated >= self.threshold:
            self.detected = True
            self.detected_at = time
            return True
        return False

    def discharge(self, magnitude: float) -> float:
        removed = min(magnitude, self.accumulated)
        self.accumulated = max(0.0, self.accumulated - magnitude)
        return removed

    def reset(self) -> "Sensor":
        return Sensor(self.id, self.category, self.placement, self.threshold)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "category": self.category,
            "placement": str(self.placement),
            "threshold": self.threshold,
            "accumulated": self.accumulated,
            "detected": self.detected,
            "detectedAt": self.detected_at,
        }
