"""Probabilistic knowledge base: asset values, completion, trust decay, environment knowledge."""

from .values import UNKNOWN, AttrCategory, AttrValue, Symbol, coerce_value, value_to_json
from .kinds import (
    AGENT,
    APPLICATION,
    BANNER,
    IP_CONNECTIVITY,
    OPERATING_SYSTEM,
    PORT,
    TCP_CONNECTIVITY,
    AssetKind,
    get_kind,
    register_kind,
    registered_kinds,
)
from .asset import Asset, completes, satisfies, trust_at
from .knowledge import EnvironmentKnowledge, MergeReport

__all__ = [
    "UNKNOWN",
    "AttrCategory",
    "AttrValue",
    "Symbol",
    "coerce_value",
    "value_to_json",
    "AGENT",
    "APPLICATION",
    "BANNER",
    "IP_CONNECTIVITY",
    "OPERATING_SYSTEM",
    "PORT",
    "TCP_CONNECTIVITY",
    "AssetKind",
    "get_kind",
    "register_kind",
    "registered_kinds",
    "Asset",
    "completes",
    "satisfies",
    "trust_at",
    "EnvironmentKnowledge",
    "MergeReport",
]
