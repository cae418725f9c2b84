"""
Abstract action specifications as loaded from the action catalog.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Mapping, Optional, Tuple

from ..assets import Asset
from ..exceptions import AssetSchemaError
from ..goals import Quantifier
from .cost import ActionCost


class VulnerabilityCategory(str, Enum):
    SOFTWARE_DESIGN_FLAW = "SoftwareDesignFlaw"
    SOFTWARE_IMPLEMENTATION_FLAW = "SoftwareImplementationFlaw"
    NETWORK_CONFIGURATION = "NetworkConfiguration"
    TRUST_RELATIONSHIP = "TrustRelationship"
    NONE = "None"


class ImplementationFlaw(str, Enum):
    BUFFER_OVERFLOW = "bufferOverflow"
    FORMAT_STRING = "formatString"
    RACE_CONDITION = "raceCondition"


@dataclass(frozen=True)
class VulnerabilityInfo:
    category: VulnerabilityCategory = VulnerabilityCategory.NONE
    identifier: Optional[str] = None
    subtype: Optional[ImplementationFlaw] = None

    def __post_init__(self):
        if self.subtype is not None and self.category is not VulnerabilityCategory.SOFTWARE_IMPLEMENTATION_FLAW:
            raise AssetSchemaError("only implementation flaws carry a subtype")

    @property
    def is_exploit(self) -> bool:
        return self.category is not VulnerabilityCategory.NONE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "category": self.category.value,
            "identifier": self.identifier,
            "subtype": self.subtype.value if self.subtype else None,
        }

    @classmethod
    def from_dict(cls, data: Optional[Mapping[str, Any]]) -> "VulnerabilityInfo":
        if not data:
            return cls()
        subtype = data.get("subtype")
        return cls(
            category=VulnerabilityCategory(data.get("category", "None")),
            identifier=data.get("identifier"),
            subtype=ImplementationFlaw(subtype) if subtype else None,
        )


def _bindings_from(data: Mapping[str, Any]) -> Dict[str, str]:
    return {str(k).lstrip("#"): str(v).lstrip("#") for k, v in (data or {}).items()}


@dataclass(frozen=True)
class EnvironmentCondition:
    """
    A world-state pattern scaling the success probability.

    bindings maps a template attribute to an attribute of the asset the action
    is completing, so "the target runs Apache" follows the concrete target.
    """

    template: Asset
    met_multiplier: float = 1.0
    unmet_multiplier: float = 1.0
    bindings: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.met_multiplier <= 0:
            raise AssetSchemaError(f"met multiplier must be positive, got {self.met_multiplier}")
        if self.unmet_multiplier < 0:
            raise AssetSchemaError(f"unmet multiplier must be non-negative, got {self.unmet_multiplier}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "template": self.template.to_dict(),
            "metMultiplier": self.met_multiplier,
            "unmetMultiplier": self.unmet_multiplier,
            "bindings": dict(self.bindings),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "EnvironmentCondition":
        return cls(
            template=Asset.from_dict(data["template"]),
            met_multiplier=float(data.get("metMultiplier", 1.0)),
            unmet_multiplier=float(data.get("unmetMultiplier", 1.0)),
            bindings=_bindings_from(data.get("bindings", {})),
        )


@dataclass(frozen=True)
class RequirementTemplate:
    """A requirement goal plus the goal attributes it inherits (requirement attr -> goal attr)."""

    template: Asset
    quantifiers: Tuple[Quantifier, ...] = ()
    bindings: Mapping[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "template": self.template.to_dict(),
            "quantifiers": [q.to_dict() for q in self.quantifiers],
            "bindings": dict(self.bindings),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RequirementTemplate":
        return cls(
            template=Asset.from_dict(data["template"]),
            quantifiers=tuple(Quantifier.from_dict(q) for q in data.get("quantifiers", [])),
            bindings=_bindings_from(data.get("bindings", {})),
        )


@dataclass(frozen=True)
class ActionSpec:
    """
    Immutable description of an action: what it provides, what it requires,
    what facilitates it and what it costs.

    provides is None for maintenance actions that complete no asset.
    agent_attribute names the attribute filled with the executing agent's
    host (e.g. `source` for connectivity actions). high_level marks an
    agent-creating task that graph construction does not expand.
    """

    name: str
    implementation: str
    provides: Optional[Asset] = None
    requirements: Tuple[RequirementTemplate, ...] = ()
    conditions: Tuple[EnvironmentCondition, ...] = ()
    base_cost: ActionCost = ActionCost()
    vulnerability: VulnerabilityInfo = VulnerabilityInfo()
    skill: int = 1
    agent_attribute: Optional[str] = None
    high_level: bool = False
    options: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "requirements", tuple(self.requirements))
        object.__setattr__(self, "conditions", tuple(self.conditions))
        if not 1 <= self.skill <= 5:
            raise AssetSchemaError(f"action {self.name}: skill must be in 1..5, got {self.skill}")
        if self.agent_attribute is not None:
            if self.provides is None or self.agent_attribute not in self.provides.kind.attributes:
                raise AssetSchemaError(f"action {self.name}: agent attribute '{self.agent_attribute}' not provided")
        for requirement in self.requirements:
            goal_kind = self.provides.kind if self.provides is not None else None
            for req_attr, goal_attr in requirement.bindings.items():
                if req_attr not in requirement.template.kind.attributes:
                    raise AssetSchemaError(f"action {self.name}: binding to unknown requirement attribute '{req_attr}'")
                if goal_kind is None or goal_attr not in goal_kind.attributes:
                    raise AssetSchemaError(f"action {self.name}: binding from unknown goal attribute '{goal_attr}'")

    @property
    def is_exploit(self) -> bool:
        return self.vulnerability.is_exploit

    @property
    def port(self) -> Optional[int]:
        port = self.options.get("port")
        return int(port) if port is not None else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "implementation": self.implementation,
            "provides": self.provides.to_dict() if self.provides is not None else None,
            "requirements": [r.to_dict() for r in self.requirements],
            "conditions": [c.to_dict() for c in self.conditions],
            "cost": self.base_cost.to_dict(),
            "vulnerability": self.vulnerability.to_dict(),
            "skill": self.skill,
            "agentAttribute": self.agent_attribute,
            "highLevel": self.high_level,
            "options": dict(self.options),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ActionSpec":
        try:
            provides = data.get("provides")
            return cls(
                name=str(data["name"]),
                implementation=str(data.get("implementation", data["name"])),
                provides=Asset.from_dict(provides) if provides else None,
                requirements=tuple(RequirementTemplate.from_dict(r) for r in data.get("requirements", [])),
                conditions=tuple(EnvironmentCondition.from_dict(c) for c in data.get("conditions", [])),
                base_cost=ActionCost.from_dict(data.get("cost")),
                vulnerability=VulnerabilityInfo.from_dict(data.get("vulnerability")),
                skill=int(data.get("skill", 1)),
                agent_attribute=data.get("agentAttribute"),
                high_level=bool(data.get("highLevel", False)),
                options=dict(data.get("options", {})),
            )
        except KeyError as e:
            raise AssetSchemaError(f"action record missing field {e}") from e
        except ValueError as e:
            raise AssetSchemaError(f"action {data.get('name', '?')}: {e}") from e

