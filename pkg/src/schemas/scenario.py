from ipaddress import IPv4Address, IPv4Network
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic.alias_generators import to_camel


class ScenarioModel(BaseModel):
    """Base for scenario file sections: camelCase on the wire, unknown keys rejected."""

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True, extra='forbid')


class OSModel(ScenarioModel):
    name: str = ""
    version: str = ""


class ServiceModel(ScenarioModel):
    banner: str = ""
    application: str = ""
    version: str = ""
    open: bool = True
    vulnerabilities: List[str] = Field(default_factory=list)


class HostModel(ScenarioModel):
    address: IPv4Address
    os: OSModel = Field(default_factory=OSModel)
    ports: Dict[int, ServiceModel] = Field(default_factory=dict)

    @field_validator('ports')
    @classmethod
    def check_ports(cls, ports: Dict[int, ServiceModel]) -> Dict[int, ServiceModel]:
        for port in ports:
            if not 0 < port < 65536:
                raise ValueError(f"port {port} outside 1..65535")
        return ports


class RuleModel(ScenarioModel):
    source: IPv4Network
    destination: IPv4Network
    port: Optional[int] = Field(default=None, ge=1, le=65535)
    verdict: Literal["Allow", "Deny"]
    priority: int = 100


class SensorModel(ScenarioModel):
    id: str = Field(min_length=1)
    category: str = Field(min_length=1)
    placement: IPv4Network
    threshold: float = Field(gt=0)


class NetworkModel(ScenarioModel):
    subnets: List[IPv4Network] = Field(min_length=1)
    hosts: List[HostModel] = Field(min_length=1)
    rules: List[RuleModel] = Field(default_factory=list)
    sensors: List[SensorModel] = Field(default_factory=list)
    default_verdict: Literal["Allow", "Deny"] = "Deny"


class AttackerModel(ScenarioModel):
    host: IPv4Address
    capabilities: List[str] = Field(default_factory=lambda: ["shell", "scan", "connect"])


class ProfileModel(ScenarioModel):
    """A named profile; base selects the preset the parameters refine."""

    name: str = Field(min_length=1)
    base: Optional[str] = None
    parameters: Dict[str, Any] = Field(default_factory=dict)


class MeasureModel(ScenarioModel):
    id: str = Field(min_length=1)
    description: str = ""
    target_actions: List[str] = Field(default_factory=list)
    success_multiplier: float = Field(default=1.0, ge=0.0, le=1.0)
    noise_multiplier: float = Field(default=1.0, ge=1.0)
    added_sensor: Optional[SensorModel] = None


class ScenarioFile(ScenarioModel):
    format_version: int
    name: str = ""
    description: str = ""
    network: NetworkModel
    attacker: AttackerModel
    objective: Dict[str, Any]
    fingerprints: Dict[str, Dict[str, float]] = Field(default_factory=dict)
    catalog_overrides: List[Dict[str, Any]] = Field(default_factory=list)
    # A bare string names a built-in preset.
    profiles: List[Union[str, ProfileModel]] = Field(default_factory=lambda: ["scriptKiddie"])
    measures: List[MeasureModel] = Field(default_factory=list)

    @field_validator('fingerprints')
    @classmethod
    def check_fingerprints(cls, table: Dict[str, Dict[str, float]]) -> Dict[str, Dict[str, float]]:
        for banner, distribution in table.items():
            if any(p < 0 for p in distribution.values()):
                raise ValueError(f"negative OS probability for banner '{banner}'")
        return table
