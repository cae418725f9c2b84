"""
Environment knowledge: an agent's store of assets about the network.
"""

import copy
from dataclasses import dataclass
from typing import Any, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence

import config.settings as settings

from ..exceptions import AssetSchemaError
from .asset import Asset, satisfies, trust_at
from .kinds import AGENT, get_kind, is_registered


@dataclass(frozen=True)
class MergeReport:
    """Outcome of EnvironmentKnowledge.insert."""

    replaced: bool
    appended: bool
    # False when the store already held exactly this asset, or a newer one.
    changed: bool


class EnvironmentKnowledge:
    """
    Ordered, single-writer asset store owned by one agent.

    Attribute-identical assets collide; the newer observation (by createdAt)
    wins, ties going to the incoming asset.
    """

    def __init__(self, owner: str, half_life: float = settings.TRUST_HALF_LIFE,
                 assets: Optional[Sequence[Asset]] = None):
        self.owner = owner
        self.half_life = half_life
        self._assets: List[Asset] = []
        self._index: Dict[Hashable, int] = {}
        # Bumped on every effective change; lets planners key caches on a snapshot.
        self.revision = 0
        for asset in assets or ():
            self.insert(asset)

    def __len__(self) -> int:
        return len(self._assets)

    def __iter__(self) -> Iterator[Asset]:
        return iter(list(self._assets))

    @property
    def assets(self) -> List[Asset]:
        return list(self._assets)

    def insert(self, asset: Asset) -> MergeReport:
        if not isinstance(asset, Asset) or not is_registered(asset.kind.name):
            raise AssetSchemaError(f"cannot insert {asset!r}: not an asset of a registered kind")
        if get_kind(asset.kind.name) != asset.kind:
            raise AssetSchemaError(f"asset kind {asset.kind.name} does not match the registered schema")

        key = asset.signature()
        position = self._index.get(key)
        if position is None:
            self._index[key] = len(self._assets)
            self._assets.append(asset)
            self.revision += 1
            return MergeReport(replaced=False, appended=True, changed=True)

        existing = self._assets[position]
        if asset.created_at < existing.created_at:
            return MergeReport(replaced=False, appended=False, changed=False)
        changed = (existing.probability, existing.trust, existing.created_at) != (
            asset.probability, asset.trust, asset.created_at)
        self._assets[position] = asset
        if changed:
            self.revision += 1
        return MergeReport(replaced=True, appended=False, changed=changed)

    def query(self, template: Asset, min_trust: float = 0.0, now: float = 0.0) -> List[Asset]:
        """
        Stored assets matching the template's concrete attributes whose decayed
        trust is at least min_trust, best first (probability, then trust).
        """
        scored = []
        for asset in self._assets:
            if not satisfies(asset, template):
                continue
            current = trust_at(asset, now, self.half_life)
            if current < min_trust:
                continue
            scored.append((asset, current))
        scored.sort(key=lambda pair: (-pair[0].probability, -pair[1]))
        return [asset for asset, _ in scored]

    def find(self, template: Asset) -> Optional[Asset]:
        """Exact attribute-identical lookup."""
        position = self._index.get(template.signature())
        return None if position is None else self._assets[position]

    def agents(self) -> List[Asset]:
        return [a for a in self._assets if a.kind.name == AGENT.name and a.probability > 0]

    def snapshot(self, owner: Optional[str] = None) -> "EnvironmentKnowledge":
        clone = EnvironmentKnowledge(owner or self.owner, self.half_life)
        clone._assets = list(self._assets)
        clone._index = dict(self._index)
        clone.revision = self.revision
        return clone

    def latest_timestamp(self) -> float:
        return max((a.created_at for a in self._assets), default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {"owner": self.owner, "assets": [a.to_dict() for a in self._assets]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], half_life: float = settings.TRUST_HALF_LIFE) -> "EnvironmentKnowledge":
        return cls(
            owner=str(data.get("owner", "localAgent")),
            half_life=half_life,
            assets=[Asset.from_dict(item) for item in data.get("assets", [])],
        )

    def __deepcopy__(self, memo):
        clone = self.snapshot()
        memo[id(self)] = clone
        clone._assets = [copy.deepcopy(a, memo) for a in self._assets]
        return clone

    def __repr__(self) -> str:
        return f"EnvironmentKnowledge(owner={self.owner!r}, assets={len(self._assets)})"
