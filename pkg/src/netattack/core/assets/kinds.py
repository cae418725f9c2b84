"""
Asset kinds and their closed attribute schemas.

New kinds are added through register_kind (scenario configuration), never by
extending an existing schema.
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

from ..exceptions import AssetSchemaError
from .values import AttrCategory


@dataclass(frozen=True)
class AssetKind:
    name: str
    schema: Tuple[Tuple[str, AttrCategory], ...]

    @property
    def attributes(self) -> Tuple[str, ...]:
        return tuple(attr for attr, _ in self.schema)

    def category(self, attribute: str) -> AttrCategory:
        for attr, cat in self.schema:
            if attr == attribute:
                return cat
        raise AssetSchemaError(f"{self.name} has no attribute '{attribute}'")

    def __str__(self) -> str:
        return self.name


_REGISTRY: Dict[str, AssetKind] = {}


def register_kind(name: str, schema: Mapping[str, AttrCategory]) -> AssetKind:
    """
    Register a kind. Re-registering an identical schema is a no-op; a
    conflicting schema for an existing name is rejected.
    """
    if not schema:
        raise AssetSchemaError(f"kind '{name}' must declare at least one attribute")
    kind = AssetKind(name=name, schema=tuple((attr, AttrCategory(cat)) for attr, cat in schema.items()))
    existing = _REGISTRY.get(name)
    if existing is not None:
        if existing != kind:
            raise AssetSchemaError(f"kind '{name}' is already registered with a different schema")
        return existing
    _REGISTRY[name] = kind
    return kind


def get_kind(name: str) -> AssetKind:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise AssetSchemaError(f"unknown asset kind '{name}'") from None


def is_registered(name: str) -> bool:
    return name in _REGISTRY


def registered_kinds() -> Tuple[AssetKind, ...]:
    return tuple(_REGISTRY.values())


AGENT = register_kind("AgentAsset", {
    "agent": AttrCategory.TEXT,
    "capabilities": AttrCategory.LIST,
    "host": AttrCategory.ADDRESS,
})
BANNER = register_kind("BannerAsset", {
    "banner": AttrCategory.TEXT,
    "host": AttrCategory.ADDRESS,
    "port": AttrCategory.NUMBER,
})
OPERATING_SYSTEM = register_kind("OperatingSystemAsset", {
    "os": AttrCategory.SYMBOL,
    "host": AttrCategory.ADDRESS,
})
IP_CONNECTIVITY = register_kind("IPConnectivityAsset", {
    "source": AttrCategory.ADDRESS,
    "target": AttrCategory.ADDRESS,
})
TCP_CONNECTIVITY = register_kind("TCPConnectivityAsset", {
    "source": AttrCategory.ADDRESS,
    "target": AttrCategory.ADDRESS,
    "port": AttrCategory.NUMBER,
})
PORT = register_kind("PortAsset", {
    "host": AttrCategory.ADDRESS,
    "port": AttrCategory.NUMBER,
    "status": AttrCategory.SYMBOL,
})
APPLICATION = register_kind("ApplicationAsset", {
    "host": AttrCategory.ADDRESS,
    "port": AttrCategory.NUMBER,
    "application": AttrCategory.SYMBOL,
})
