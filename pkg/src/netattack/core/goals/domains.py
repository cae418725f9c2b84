"""
Quantifier domains: integer ranges, explicit value lists and netblocks.

Iteration order is deterministic: ascending numbers, list order, ascending
host addresses.
"""

import ipaddress
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterator, Mapping, Sequence, Tuple

from ..assets.values import AttrCategory, coerce_value, value_to_json
from ..exceptions import GoalValidationError


class Domain(ABC):
    """Base class for the collections a quantifier ranges over."""

    @abstractmethod
    def __iter__(self) -> Iterator[Any]:
        pass

    @abstractmethod
    def __len__(self) -> int:
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass

    @abstractmethod
    def key(self) -> Tuple[Any, ...]:
        """Hashable identity used in goal signatures."""
        pass

    def check_category(self, category: AttrCategory) -> None:
        """Raise GoalValidationError unless every element fits the attribute category."""
        pass

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "Domain":
        kind = data.get("type")
        if kind == "range" or (kind is None and "from" in data):
            return RangeDomain(int(data["from"]), int(data["to"]))
        if kind == "values" or (kind is None and "values" in data):
            return ValueListDomain(tuple(data["values"]))
        if kind == "netblock" or (kind is None and "netblock" in data):
            return NetblockDomain(data["netblock"])
        raise GoalValidationError(f"unrecognised domain {dict(data)!r}")


class RangeDomain(Domain):
    """Inclusive integer range, e.g. ports 1..1024."""

    def __init__(self, start: int, stop: int):
        if start > stop:
            raise GoalValidationError(f"range start {start} exceeds end {stop}")
        self.start = start
        self.stop = stop

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.start, self.stop + 1))

    def __len__(self) -> int:
        return self.stop - self.start + 1

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "range", "from": self.start, "to": self.stop}

    def key(self) -> Tuple[Any, ...]:
        return ("range", self.start, self.stop)

    def check_category(self, category: AttrCategory) -> None:
        if category is not AttrCategory.NUMBER:
            raise GoalValidationError(f"range domain cannot populate a {category.value} attribute")

    def __repr__(self) -> str:
        return f"RangeDomain({self.start}..{self.stop})"


class ValueListDomain(Domain):
    """Explicit ordered values, e.g. #(21, 22, 23, 80)."""

    def __init__(self, values: Sequence[Any]):
        self.values = tuple(values)

    def __iter__(self) -> Iterator[Any]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "values", "values": [value_to_json(v) for v in self.values]}

    def key(self) -> Tuple[Any, ...]:
        return ("values",) + tuple(repr(v) for v in self.values)

    def check_category(self, category: AttrCategory) -> None:
        if not self.values:
            raise GoalValidationError("value list domain must not be empty")
        for value in self.values:
            try:
                coerce_value(category, value)
            except ValueError as e:
                raise GoalValidationError(str(e)) from e

    def __repr__(self) -> str:
        return f"ValueListDomain({list(self.values)!r})"


class NetblockDomain(Domain):
    """Usable host addresses of an IPv4 CIDR block, ascending."""

    def __init__(self, netblock: Any):
        try:
            self.network = ipaddress.IPv4Network(netblock, strict=False)
        except ValueError as e:
            raise GoalValidationError(f"invalid netblock {netblock!r}: {e}") from e

    def __iter__(self) -> Iterator[ipaddress.IPv4Address]:
        return iter(self.network.hosts())

    def __len__(self) -> int:
        if self.network.prefixlen >= 31:
            return self.network.num_addresses
        return self.network.num_addresses - 2

    def to_dict(self) -> Dict[str, Any]:
        return {"type": "netblock", "netblock": str(self.network)}

    def key(self) -> Tuple[Any, ...]:
        return ("netblock", str(self.network))

    def check_category(self, category: AttrCategory) -> None:
        if category is not AttrCategory.ADDRESS:
            raise GoalValidationError(f"netblock domain cannot populate a {category.value} attribute")

    def __repr__(self) -> str:
        return f"NetblockDomain({self.network})"
