"""
Scenario loading and validation.

A scenario file bundles the simulated network, the attacker's starting point,
catalog overrides, the objective, the attacker profiles to try and the
countermeasures on offer. Validation reports every problem it finds, each
prefixed with the field path it concerns.
"""

import ipaddress
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple, Union

from pydantic import ValidationError

import config.settings as settings
from src.schemas.scenario import HostModel, ProfileModel, ScenarioFile, SensorModel

from ..core.assets import EnvironmentKnowledge
from ..core.catalog import Catalog
from ..core.engine import PROFILE_PRESETS, AttackEngine, AttackerProfile, AttackParameters, AttackReport
from ..core.exceptions import NetAttackError, ScenarioValidationError
from ..core.factories.action_factory import ActionFactory
from ..core.factories.logger_factory import LoggerFactory
from ..core.goals import Goal
from ..core.netsim import FirewallRule, Sensor, Service, SimHost, SimNetwork, Verdict

logger = LoggerFactory.get_logger("netattack.scenario")

ScenarioSource = Union[bytes, str, Mapping[str, Any]]


@dataclass(frozen=True)
class Measure:
    """A countermeasure: weakens targeted actions and/or adds a sensor."""

    id: str
    target_actions: FrozenSet[str] = frozenset()
    success_multiplier: float = 1.0
    noise_multiplier: float = 1.0
    added_sensor: Optional[Sensor] = None
    description: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "description": self.description,
            "targetActions": sorted(self.target_actions),
            "successMultiplier": self.success_multiplier,
            "noiseMultiplier": self.noise_multiplier,
            "addedSensor": self.added_sensor.to_dict() if self.added_sensor is not None else None,
        }


@dataclass
class Scenario:
    name: str
    network: SimNetwork
    catalog: Catalog
    objective: Goal
    attacker_host: ipaddress.IPv4Address
    attacker_capabilities: Tuple[str, ...] = ("shell", "scan", "connect")
    profiles: List[AttackerProfile] = field(default_factory=list)
    measures: List[Measure] = field(default_factory=list)
    fingerprints: Dict[str, Dict[str, float]] = field(default_factory=dict)
    description: str = ""
    applied_measures: FrozenSet[str] = frozenset()
    source: Optional[str] = None

    def profile(self, name: str) -> AttackerProfile:
        for profile in self.profiles:
            if profile.name == name:
                return profile
        if name in PROFILE_PRESETS:
            return PROFILE_PRESETS[name]
        raise KeyError(f"unknown profile '{name}'")

    def measure(self, measure_id: str) -> Measure:
        for measure in self.measures:
            if measure.id == measure_id:
                return measure
        raise KeyError(f"unknown measure '{measure_id}'")

    def fresh_objective(self) -> Goal:
        # Graph construction writes candidate actions into the goal; every run gets its own.
        return Goal.from_dict(self.objective.to_dict())

    def engine(self, profile: Union[str, AttackerProfile, AttackParameters], seed: int = 0,
               knowledge: Optional[EnvironmentKnowledge] = None, **kwargs: Any) -> AttackEngine:
        if isinstance(profile, str):
            profile = self.profile(profile)
        return AttackEngine(
            self.network,
            self.catalog,
            self.attacker_host,
            profile=profile,
            seed=seed,
            fingerprints=self.fingerprints,
            attacker_capabilities=self.attacker_capabilities,
            knowledge=knowledge,
            **kwargs,
        )

    def run(self, profile: Union[str, AttackerProfile, AttackParameters], seed: int = 0,
            knowledge: Optional[EnvironmentKnowledge] = None, **kwargs: Any) -> AttackReport:
        return self.engine(profile, seed, knowledge, **kwargs).run(self.fresh_objective())


class _Diagnostics:
    def __init__(self):
        self.items: List[str] = []

    def add(self, path: str, message: str) -> None:
        self.items.append(f"{path}: {message}" if path else message)

    def __bool__(self) -> bool:
        return bool(self.items)


def _path(loc: Sequence[Any]) -> str:
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out


def _parse(source: ScenarioSource, diagnostics: _Diagnostics) -> Optional[Dict[str, Any]]:
    if isinstance(source, Mapping):
        return dict(source)
    try:
        data = json.loads(source)
    except json.JSONDecodeError as e:
        diagnostics.add(f"line {e.lineno}, column {e.colno}", f"invalid JSON: {e.msg}")
        return None
    except UnicodeDecodeError as e:
        diagnostics.add("", f"scenario is not UTF-8 text: {e}")
        return None
    if not isinstance(data, dict):
        diagnostics.add("", "scenario must be a JSON object")
        return None
    return data


def _merge_overrides(base: Catalog, model: ScenarioFile, diagnostics: _Diagnostics) -> Catalog:
    valid: List[Mapping[str, Any]] = []
    implementations = set(ActionFactory.implementations())
    for i, override in enumerate(model.catalog_overrides):
        path = f"catalogOverrides[{i}]"
        if not override.get("name"):
            diagnostics.add(f"{path}.name", "missing action name")
            continue
        try:
            merged = base.merged([override])
        except (NetAttackError, ValueError, KeyError, TypeError) as e:
            diagnostics.add(path, f"action '{override['name']}': {e}")
            continue
        implementation = merged.get(override["name"]).implementation
        if implementation not in implementations:
            diagnostics.add(f"{path}.implementation", f"unknown implementation '{implementation}'")
            continue
        valid.append(override)
    try:
        return base.merged(valid)
    except (NetAttackError, ValueError) as e:
        diagnostics.add("catalogOverrides", str(e))
        return base


def _check_hosts(model: ScenarioFile, catalog: Catalog, diagnostics: _Diagnostics) -> None:
    exploited = {s.vulnerability.identifier for s in catalog if s.is_exploit and s.vulnerability.identifier}
    seen: Set[ipaddress.IPv4Address] = set()
    for i, host in enumerate(model.network.hosts):
        path = f"network.hosts[{i}]"
        if host.address in seen:
            diagnostics.add(f"{path}.address", f"duplicate host address {host.address}")
        seen.add(host.address)
        owners = [s for s in model.network.subnets if host.address in s]
        if len(owners) != 1:
            diagnostics.add(f"{path}.address", f"{host.address} must belong to exactly one subnet, found {len(owners)}")
        for port, service in sorted(host.ports.items()):
            if service.vulnerabilities and not service.application:
                diagnostics.add(f"{path}.ports.{port}", "vulnerabilities need an application on the port")
            for vuln in service.vulnerabilities:
                if vuln not in exploited:
                    diagnostics.add(f"{path}.ports.{port}.vulnerabilities",
                                    f"'{vuln}' is not exploited by any action in the catalog")

    host_vulns = {v for h in model.network.hosts for s in h.ports.values() for v in s.vulnerabilities}
    for i, override in enumerate(model.catalog_overrides):
        name = override.get("name")
        if not name or name not in catalog:
            continue
        spec = catalog.get(name)
        declared = (override.get("vulnerability") or {}).get("identifier")
        if declared and spec.is_exploit and declared not in host_vulns:
            diagnostics.add(f"catalogOverrides[{i}].vulnerability.identifier",
                            f"action '{name}' exploits '{declared}', which no host in network.hosts carries")

    if model.attacker.host not in seen:
        diagnostics.add("attacker.host", f"{model.attacker.host} is not a host of the network")


def _check_sensor(path: str, sensor: SensorModel, categories: Set[str], diagnostics: _Diagnostics) -> None:
    if sensor.category not in categories:
        diagnostics.add(f"{path}.category", f"no catalog action makes '{sensor.category}' noise")


def _check_profiles(model: ScenarioFile, catalog: Catalog, categories: Set[str],
                    diagnostics: _Diagnostics) -> List[AttackerProfile]:
    profiles: List[AttackerProfile] = []
    names: Set[str] = set()
    for i, entry in enumerate(model.profiles):
        path = f"profiles[{i}]"
        if isinstance(entry, str):
            entry = ProfileModel(name=entry, base=entry)
        if entry.name in names:
            diagnostics.add(f"{path}.name", f"duplicate profile '{entry.name}'")
            continue
        names.add(entry.name)
        base_name = entry.base or (entry.name if entry.name in PROFILE_PRESETS else None)
        if base_name is not None and base_name not in PROFILE_PRESETS:
            diagnostics.add(f"{path}.base", f"unknown preset '{base_name}', expected one of {sorted(PROFILE_PRESETS)}")
            continue
        base = PROFILE_PRESETS[base_name].parameters if base_name else None
        try:
            parameters = AttackParameters.from_dict(entry.parameters, base)
        except (NetAttackError, ValueError, TypeError) as e:
            diagnostics.add(f"{path}.parameters", str(e))
            continue
        if parameters.portfolio is not None:
            for action in sorted(parameters.portfolio - set(catalog.names())):
                diagnostics.add(f"{path}.parameters.portfolio", f"unknown action '{action}'")
        for category in parameters.tolerated_noise:
            if category not in categories:
                diagnostics.add(f"{path}.parameters.toleratedNoise", f"unknown sensor category '{category}'")
        profiles.append(AttackerProfile(entry.name, parameters))
    return profiles


def _check_measures(model: ScenarioFile, catalog: Catalog, categories: Set[str],
                    diagnostics: _Diagnostics) -> None:
    ids: Set[str] = set()
    for i, measure in enumerate(model.measures):
        path = f"measures[{i}]"
        if measure.id in ids:
            diagnostics.add(f"{path}.id", f"duplicate measure id '{measure.id}'")
        ids.add(measure.id)
        for action in measure.target_actions:
            if action not in catalog:
                diagnostics.add(f"{path}.targetActions", f"unknown action '{action}'")
        if measure.added_sensor is not None:
            _check_sensor(f"{path}.addedSensor", measure.added_sensor, categories, diagnostics)


def _sensor(model: SensorModel) -> Sensor:
    return Sensor(id=model.id, category=model.category, placement=model.placement, threshold=model.threshold)


def _host(model: HostModel) -> SimHost:
    return SimHost(
        address=model.address,
        os_name=model.os.name,
        os_version=model.os.version,
        ports={
            port: Service(
                banner=s.banner,
                application=s.application,
                version=s.version,
                open=s.open,
                vulnerabilities=frozenset(s.vulnerabilities),
            )
            for port, s in sorted(model.ports.items())
        },
    )


def build_network(model: ScenarioFile) -> SimNetwork:
    net = model.network
    return SimNetwork(
        hosts=[_host(h) for h in net.hosts],
        subnets=net.subnets,
        rules=[
            FirewallRule(source=r.source, destination=r.destination, verdict=Verdict(r.verdict),
                         priority=r.priority, port=r.port)
            for r in net.rules
        ],
        sensors=[_sensor(s) for s in net.sensors],
        default_verdict=Verdict(net.default_verdict),
    )


def validate_scenario(source: ScenarioSource, catalog: Optional[Catalog] = None,
                      origin: Optional[str] = None) -> Scenario:
    """
    Parse and check a scenario.

    Args:
        source: Raw file bytes, JSON text or an already parsed mapping.
        catalog: Base action catalog; the built-in one when omitted.
        origin: Where the scenario came from, for messages.

    Returns:
        The ready-to-run Scenario.

    Raises:
        ScenarioValidationError: with every diagnostic found.
    """
    diagnostics = _Diagnostics()
    data = _parse(source, diagnostics)
    if data is None:
        raise ScenarioValidationError(diagnostics.items)

    version = data.get("formatVersion")
    if version != settings.SCENARIO_FORMAT_VERSION:
        diagnostics.add("formatVersion", f"unsupported format version {version!r}, "
                                         f"expected {settings.SCENARIO_FORMAT_VERSION}")
        raise ScenarioValidationError(diagnostics.items)

    try:
        model = ScenarioFile.model_validate(data)
    except ValidationError as e:
        for error in e.errors():
            diagnostics.add(_path(error["loc"]), error["msg"])
        logger.warning(f"Scenario {origin or '<input>'} rejected with {len(diagnostics.items)} problem(s)")
        raise ScenarioValidationError(diagnostics.items) from None

    base = catalog if catalog is not None else Catalog.load()
    merged = _merge_overrides(base, model, diagnostics)
    categories = {n.sensor_category for s in merged for n in s.base_cost.noise}

    _check_hosts(model, merged, diagnostics)
    for i, sensor in enumerate(model.network.sensors):
        _check_sensor(f"network.sensors[{i}]", sensor, categories, diagnostics)
    sensor_ids = [s.id for s in model.network.sensors]
    for sensor_id in sorted({s for s in sensor_ids if sensor_ids.count(s) > 1}):
        diagnostics.add("network.sensors", f"duplicate sensor id '{sensor_id}'")

    objective: Optional[Goal] = None
    try:
        objective = Goal.from_dict(model.objective)
    except (NetAttackError, ValueError, KeyError, TypeError) as e:
        diagnostics.add("objective", str(e))

    profiles = _check_profiles(model, merged, categories, diagnostics)
    _check_measures(model, merged, categories, diagnostics)

    if diagnostics or objective is None:
        logger.warning(f"Scenario {origin or model.name} rejected with {len(diagnostics.items)} problem(s)")
        raise ScenarioValidationError(diagnostics.items)

    scenario = Scenario(
        name=model.name or (Path(origin).stem if origin else "scenario"),
        description=model.description,
        network=build_network(model),
        catalog=merged,
        objective=objective,
        attacker_host=model.attacker.host,
        attacker_capabilities=tuple(model.attacker.capabilities),
        profiles=profiles,
        measures=[
            Measure(
                id=m.id,
                target_actions=frozenset(m.target_actions),
                success_multiplier=m.success_multiplier,
                noise_multiplier=m.noise_multiplier,
                added_sensor=_sensor(m.added_sensor) if m.added_sensor is not None else None,
                description=m.description,
            )
            for m in model.measures
        ],
        fingerprints={k: dict(v) for k, v in model.fingerprints.items()},
        source=origin,
    )
    logger.info(f"📄 Scenario '{scenario.name}': {len(scenario.network.hosts)} host(s), "
                f"{len(scenario.profiles)} profile(s), {len(scenario.measures)} measure(s)")
    return scenario


def load_scenario(path: Union[str, Path], catalog: Optional[Catalog] = None) -> Scenario:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ScenarioValidationError([f"{path}: cannot read scenario ({e.strerror})"]) from e
    return validate_scenario(raw, catalog=catalog, origin=str(path))
