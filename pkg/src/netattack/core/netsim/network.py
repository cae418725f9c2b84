"""
The simulated network: routing and firewall oracle, service tables and IDS sensors.
"""

import copy
import ipaddress
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..actions import CleanupClass, NoiseEvent
from ..exceptions import ConfigurationError
from ..factories.logger_factory import LoggerFactory
from .model import FirewallRule, Sensor, SimHost, Verdict
from .noise import LedgerEntry, NoiseRecord

logger = LoggerFactory.get_logger("netattack.netsim")

Address = Union[str, ipaddress.IPv4Address]


def _ip(address: Address) -> ipaddress.IPv4Address:
    return address if isinstance(address, ipaddress.IPv4Address) else ipaddress.IPv4Address(address)


class SimNetwork:
    """
    Ground truth for one simulation.

    Routing and firewall checks are pure functions of the configuration;
    sensors and the noise log are the only mutable state.
    """

    def __init__(
        self,
        hosts: Iterable[SimHost],
        subnets: Iterable[ipaddress.IPv4Network],
        rules: Iterable[FirewallRule] = (),
        sensors: Iterable[Sensor] = (),
        default_verdict: Verdict = Verdict.DENY,
    ):
        self.hosts: Dict[ipaddress.IPv4Address, SimHost] = {}
        for host in hosts:
            if host.address in self.hosts:
                raise ConfigurationError(f"duplicate host address {host.address}")
            self.hosts[host.address] = host
        self.subnets: List[ipaddress.IPv4Network] = list(subnets)
        for address in self.hosts:
            owners = [s for s in self.subnets if address in s]
            if len(owners) != 1:
                raise ConfigurationError(f"host {address} must belong to exactly one subnet, found {len(owners)}")
        # Stable sort keeps declaration order among equal priorities.
        self.rules: List[FirewallRule] = sorted(rules, key=lambda r: r.priority)
        self.sensors: List[Sensor] = list(sensors)
        self.default_verdict = default_verdict
        self.clock: float = 0.0
        self.noise_log: List[NoiseRecord] = []
        self.ledger: List[LedgerEntry] = []

    def host(self, address: Address) -> Optional[SimHost]:
        return self.hosts.get(_ip(address))

    def addresses(self) -> List[ipaddress.IPv4Address]:
        return sorted(self.hosts)

    def subnet_of(self, address: Address) -> Optional[ipaddress.IPv4Network]:
        ip = _ip(address)
        for subnet in self.subnets:
            if ip in subnet:
                return subnet
        return None

    def advance(self, seconds: float) -> float:
        if seconds < 0:
            raise ConfigurationError("the simulated clock never runs backwards")
        self.clock += seconds
        return self.clock

    def routable(self, source: Address, target: Address) -> bool:
        """
        IP-level reachability. A wildcard-port rule decides; a port-specific
        Allow is enough to reach the host; port-specific Denies are skipped.
        """
        src, dst = _ip(source), _ip(target)
        if src == dst:
            return True
        for rule in self.rules:
            if not rule.matches(src, dst):
                continue
            if rule.port is None:
                return rule.verdict is Verdict.ALLOW
            if rule.verdict is Verdict.ALLOW:
                return True
        return self.default_verdict is Verdict.ALLOW

    def tcp_permitted(self, source: Address, target: Address, port: int) -> Tuple[bool, bool]:
        """(permitted by the firewall, port open on the target)."""
        src, dst = _ip(source), _ip(target)
        host = self.hosts.get(dst)
        service = host.service(port) if host else None
        is_open = bool(service and service.open)
        if src == dst:
            return True, is_open
        for rule in self.rules:
            if rule.matches(src, dst) and (rule.port is None or rule.port == int(port)):
                return rule.verdict is Verdict.ALLOW, is_open
        return self.default_verdict is Verdict.ALLOW, is_open

    def emit_noise(self, events: Sequence[Tuple[Address, NoiseEvent]], time: Optional[float] = None,
                   action: str = "") -> List[str]:
        """
        Feed every observing sensor; returns the ids of sensors that crossed
        their threshold during this call.
        """
        now = self.clock if time is None else time
        detected: List[str] = []
        for address, event in events:
            ip = _ip(address)
            record = NoiseRecord(len(self.noise_log), now, ip, event, action)
            self.noise_log.append(record)
            self.ledger.append(LedgerEntry("emit", record.record_id, now, str(ip), event.sensor_category, event.magnitude))
            for sensor in self.sensors:
                if sensor.observes(ip, event.sensor_category) and sensor.accumulate(event.magnitude, now):
                    logger.info(f"🚨 Sensor {sensor.id} detected activity at t={now:.1f}")
                    detected.append(sensor.id)
        return detected

    def _clean(self, record: NoiseRecord, time: Optional[float] = None) -> float:
        now = self.clock if time is None else time
        record.cleaned = True
        self.ledger.append(LedgerEntry("clean", record.record_id, now, str(record.address),
                                       record.event.sensor_category, record.event.magnitude))
        for sensor in self.sensors:
            if sensor.observes(record.address, record.event.sensor_category):
                sensor.discharge(record.event.magnitude)
        return record.event.magnitude

    def clean_noise(self, outcome: Any, success: bool) -> float:
        """
        Clean the records an outcome emitted: CleanableAlways unconditionally,
        CleanableOnSuccess only on success. Latched detections stay latched.
        """
        removed = 0.0
        for record_id in getattr(outcome, "noise_records", ()):
            record = self.noise_log[record_id]
            if record.cleaned:
                continue
            cleanup = record.event.cleanup
            if cleanup is CleanupClass.CLEANABLE_ALWAYS or (cleanup is CleanupClass.CLEANABLE_ON_SUCCESS and success):
                removed += self._clean(record)
        return removed

    def residue(self, address: Address) -> List[NoiseRecord]:
        ip = _ip(address)
        return [
            r for r in self.noise_log
            if r.address == ip and not r.cleaned and r.event.cleanup is CleanupClass.CLEANABLE_ON_SUCCESS
        ]

    def clean_residue(self, address: Address) -> float:
        """Remove CleanableOnSuccess noise left on a host by earlier actions."""
        return sum(self._clean(r) for r in self.residue(address))

    def uncleaned_noise(self) -> Dict[str, float]:
        totals: Dict[str, float] = {}
        for record in self.noise_log:
            if not record.cleaned:
                category = record.event.sensor_category
                totals[category] = totals.get(category, 0.0) + record.event.magnitude
        return totals

    def detections(self) -> List[Tuple[str, float]]:
        hits = [(s.id, s.detected_at if s.detected_at is not None else 0.0) for s in self.sensors if s.detected]
        return sorted(hits, key=lambda pair: (pair[1], pair[0]))

    def add_sensor(self, sensor: Sensor) -> None:
        if any(s.id == sensor.id for s in self.sensors):
            return
        self.sensors.append(sensor)

    def clone(self) -> "SimNetwork":
        """Isolated copy for one run."""
        return copy.deepcopy(self)

    def __repr__(self) -> str:
        return f"SimNetwork(hosts={len(self.hosts)}, rules={len(self.rules)}, sensors={len(self.sensors)})"
