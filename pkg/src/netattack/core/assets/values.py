"""
Attribute values carried by assets.

A value is one of: UNKNOWN, text (str), number (int), address
(IPv4Address), netblock (IPv4Network), Symbol, or a tuple of values.
"""

import ipaddress
from dataclasses import dataclass
from enum import Enum
from typing import Any, Tuple, Union

from ..exceptions import AssetSchemaError


class _Unknown:
    """Sentinel for an attribute whose value is not known yet (the implicit question)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unknown"

    def __bool__(self) -> bool:
        return False

    def __reduce__(self):
        return (_Unknown, ())

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


UNKNOWN = _Unknown()


@dataclass(frozen=True, order=True)
class Symbol:
    """An enumerated token such as `open`, `linux` or `apache`."""

    token: str

    def __str__(self) -> str:
        return self.token


AttrValue = Union[_Unknown, str, int, ipaddress.IPv4Address, ipaddress.IPv4Network, Symbol, Tuple[Any, ...]]


class AttrCategory(str, Enum):
    TEXT = "text"
    NUMBER = "number"
    ADDRESS = "address"
    NETBLOCK = "netblock"
    SYMBOL = "symbol"
    LIST = "list"


def coerce_value(category: AttrCategory, raw: Any) -> AttrValue:
    """
    Convert a raw (JSON or keyword) value into the category's representation.

    None maps to UNKNOWN. Raises AssetSchemaError when the value does not fit.
    """
    if raw is None or raw is UNKNOWN:
        return UNKNOWN
    try:
        if category is AttrCategory.TEXT:
            if not isinstance(raw, str):
                raise TypeError(f"expected text, got {type(raw).__name__}")
            return raw
        if category is AttrCategory.NUMBER:
            if isinstance(raw, bool) or not isinstance(raw, int):
                raise TypeError(f"expected integer, got {raw!r}")
            return raw
        if category is AttrCategory.ADDRESS:
            return ipaddress.IPv4Address(raw) if not isinstance(raw, ipaddress.IPv4Address) else raw
        if category is AttrCategory.NETBLOCK:
            return ipaddress.IPv4Network(raw) if not isinstance(raw, ipaddress.IPv4Network) else raw
        if category is AttrCategory.SYMBOL:
            if isinstance(raw, Symbol):
                return raw
            if not isinstance(raw, str) or not raw:
                raise TypeError(f"expected symbol token, got {raw!r}")
            return Symbol(raw.lstrip("#"))
        if category is AttrCategory.LIST:
            if isinstance(raw, (str, bytes)) or not hasattr(raw, "__iter__"):
                raise TypeError(f"expected list, got {raw!r}")
            return tuple(_coerce_list_item(item) for item in raw)
    except (TypeError, ValueError) as e:
        raise AssetSchemaError(f"invalid {category.value} value {raw!r}: {e}") from e
    raise AssetSchemaError(f"unsupported attribute category {category!r}")


def _coerce_list_item(item: Any) -> AttrValue:
    # List members keep JSON-friendly shapes: strings become symbols.
    if isinstance(item, str):
        return Symbol(item.lstrip("#"))
    if isinstance(item, (list, tuple)):
        return tuple(_coerce_list_item(i) for i in item)
    return item


def value_to_json(value: AttrValue) -> Any:
    """Inverse of coerce_value for serialization; UNKNOWN becomes None."""
    if value is UNKNOWN:
        return None
    if isinstance(value, Symbol):
        return value.token
    if isinstance(value, (ipaddress.IPv4Address, ipaddress.IPv4Network)):
        return str(value)
    if isinstance(value, tuple):
        return [value_to_json(v) for v in value]
    return value
