"""
Probabilistic, trust-weighted assets and the completion relation.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Dict, Hashable, Mapping, Optional, Tuple, Union

import config.settings as settings

from ..exceptions import AssetSchemaError, ConfigurationError
from .kinds import AssetKind, get_kind
from .values import UNKNOWN, AttrValue, coerce_value, value_to_json


@dataclass(frozen=True)
class Asset:
    """
    A piece of knowledge about the network.

    probability 0 encodes a known-false (negative) property, 1 certainty.
    Attributes left UNKNOWN pose the asset's implicit question.
    """

    kind: AssetKind
    attrs: Mapping[str, AttrValue] = field(default_factory=dict)
    probability: float = 1.0
    trust: float = 1.0
    created_at: float = 0.0

    def __post_init__(self):
        if not isinstance(self.kind, AssetKind):
            object.__setattr__(self, "kind", get_kind(str(self.kind)))
        unexpected = set(self.attrs) - set(self.kind.attributes)
        if unexpected:
            raise AssetSchemaError(f"{self.kind.name} has no attribute(s) {sorted(unexpected)}")
        coerced: Dict[str, AttrValue] = {}
        for attr, category in self.kind.schema:
            coerced[attr] = coerce_value(category, self.attrs.get(attr, UNKNOWN))
        object.__setattr__(self, "attrs", coerced)
        if not 0.0 <= self.probability <= 1.0:
            raise AssetSchemaError(f"probability {self.probability} outside [0, 1]")
        if not 0.0 <= self.trust <= 1.0:
            raise AssetSchemaError(f"trust {self.trust} outside [0, 1]")

    @classmethod
    def of(
        cls,
        kind: Union[str, AssetKind],
        probability: float = 1.0,
        trust: float = 1.0,
        created_at: float = 0.0,
        **attrs: Any,
    ) -> "Asset":
        """Convenience constructor; missing attributes are UNKNOWN."""
        resolved = kind if isinstance(kind, AssetKind) else get_kind(kind)
        return cls(kind=resolved, attrs=attrs, probability=probability, trust=trust, created_at=created_at)

    def __getitem__(self, attribute: str) -> AttrValue:
        return self.attrs[attribute]

    def get(self, attribute: str, default: Any = UNKNOWN) -> AttrValue:
        return self.attrs.get(attribute, default)

    @property
    def is_negative(self) -> bool:
        return self.probability == 0.0

    def concrete_attributes(self) -> Tuple[str, ...]:
        return tuple(a for a in self.kind.attributes if self.attrs[a] is not UNKNOWN)

    def unknown_attributes(self) -> Tuple[str, ...]:
        return tuple(a for a in self.kind.attributes if self.attrs[a] is UNKNOWN)

    def with_attrs(self, **changes: Any) -> "Asset":
        merged = dict(self.attrs)
        merged.update(changes)
        return replace(self, attrs=merged)

    def with_values(self, probability: Optional[float] = None, trust: Optional[float] = None,
                    created_at: Optional[float] = None) -> "Asset":
        return replace(
            self,
            probability=self.probability if probability is None else probability,
            trust=self.trust if trust is None else trust,
            created_at=self.created_at if created_at is None else created_at,
        )

    def signature(self) -> Tuple[Hashable, ...]:
        """Kind plus attribute values; identical signatures are attribute-identical assets."""
        return (self.kind.name,) + tuple((a, self.attrs[a]) for a in self.kind.attributes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.name,
            "attrs": {a: value_to_json(self.attrs[a]) for a in self.kind.attributes},
            "probability": self.probability,
            "trust": self.trust,
            "createdAt": self.created_at,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Asset":
        try:
            return cls(
                kind=get_kind(data["kind"]),
                attrs=dict(data.get("attrs", {})),
                probability=float(data.get("probability", 1.0)),
                trust=float(data.get("trust", 1.0)),
                created_at=float(data.get("createdAt", 0.0)),
            )
        except KeyError as e:
            raise AssetSchemaError(f"asset record missing field {e}") from e

    def describe(self) -> str:
        parts = ", ".join(f"{a}={value_to_json(self.attrs[a])}" for a in self.kind.attributes)
        return f"{self.kind.name}({parts}) p={self.probability:g}"


def completes(a1: Asset, a2: Asset) -> bool:
    """
    True iff a1 answers (part of) the question posed by a2: same kind, a1
    agrees with every concrete attribute of a2, and a1 is concrete on at least
    one attribute a2 leaves UNKNOWN. Probability and trust are ignored.
    """
    if a1.kind.name != a2.kind.name:
        return False
    extra = False
    for attr in a1.kind.attributes:
        v1, v2 = a1.attrs[attr], a2.attrs[attr]
        if v2 is not UNKNOWN:
            if v1 != v2:
                return False
        elif v1 is not UNKNOWN:
            extra = True
    return extra


def satisfies(asset: Asset, template: Asset) -> bool:
    """The asset matches every concrete attribute of the template (equal or completing)."""
    if asset.kind.name != template.kind.name:
        return False
    for attr in template.kind.attributes:
        expected = template.attrs[attr]
        if expected is not UNKNOWN and asset.attrs[attr] != expected:
            return False
    return True


def trust_at(asset: Asset, now: float, half_life: float = settings.TRUST_HALF_LIFE) -> float:
    """Exponential trust decay: trust x 2^(-age / half_life)."""
    if half_life <= 0:
        raise ConfigurationError(f"trust half-life must be positive, got {half_life}")
    # Persisted knowledge may be stamped ahead of a fresh clock.
    age = max(0.0, now - asset.created_at)
    return asset.trust * 2.0 ** (-age / half_life)
