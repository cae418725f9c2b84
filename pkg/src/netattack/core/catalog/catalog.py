"""
The action catalog: the built-in data file merged with scenario overrides.
"""

import copy
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Union

import config.settings as settings

from ..actions import ActionSpec
from ..exceptions import AssetSchemaError
from ..factories.logger_factory import LoggerFactory

logger = LoggerFactory.get_logger("netattack.catalog")


def deep_merge(base: Mapping[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(dict(base))
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class Catalog:
    """
    Ordered, immutable collection of action specs.

    Declaration order is the planner's final tie-breaker, so it is preserved
    through merges: overridden actions keep their slot, new ones are appended.
    """

    def __init__(self, records: Iterable[Mapping[str, Any]]):
        self._records: List[Dict[str, Any]] = [dict(r) for r in records]
        self._specs: List[ActionSpec] = []
        seen = set()
        for record in self._records:
            spec = ActionSpec.from_dict(record)
            if spec.name in seen:
                raise AssetSchemaError(f"duplicate action name '{spec.name}' in catalog")
            seen.add(spec.name)
            self._specs.append(spec)
        self._by_name = {s.name: s for s in self._specs}

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None) -> "Catalog":
        path = Path(path or settings.CATALOG_PATH)
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        records = data["actions"] if isinstance(data, Mapping) else data
        catalog = cls(records)
        logger.debug(f"Loaded {len(catalog)} actions from {path}")
        return catalog

    def merged(self, overrides: Sequence[Mapping[str, Any]]) -> "Catalog":
        """New catalog with overrides deep-merged by action name."""
        records = [copy.deepcopy(r) for r in self._records]
        index = {r["name"]: i for i, r in enumerate(records)}
        for override in overrides:
            name = override.get("name")
            if name in index:
                records[index[name]] = deep_merge(records[index[name]], override)
            else:
                index[name] = len(records)
                records.append(copy.deepcopy(dict(override)))
        return Catalog(records)

    def __len__(self) -> int:
        return len(self._specs)

    def __iter__(self) -> Iterator[ActionSpec]:
        return iter(self._specs)

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def get(self, name: str) -> ActionSpec:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown action '{name}'") from None

    def names(self) -> List[str]:
        return [s.name for s in self._specs]

    def index(self, name: str) -> int:
        return self.names().index(name)

    def portfolio(self, names: Optional[Iterable[str]] = None, max_skill: int = 5) -> List[ActionSpec]:
        """Specs available to an attacker, in declaration order."""
        if names is not None:
            wanted = set(names)
            unknown = wanted - set(self._by_name)
            if unknown:
                raise AssetSchemaError(f"portfolio references unknown actions {sorted(unknown)}")
            return [s for s in self._specs if s.name in wanted]
        return [s for s in self._specs if s.skill <= max_skill]

    def records(self) -> List[Dict[str, Any]]:
        return copy.deepcopy(self._records)

    def __repr__(self) -> str:
        return f"Catalog({self.names()!r})"
