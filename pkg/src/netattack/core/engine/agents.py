"""
Agents: a set of capabilities running on a host, with their own knowledge.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from ..assets import AGENT, Asset, EnvironmentKnowledge
from ..catalog.exploit import agent_id_for
from .parameters import AttackParameters

ROOT_AGENT_ID = "localAgent"


@dataclass
class Agent:
    id: str
    host: object
    capabilities: Tuple[str, ...]
    knowledge: EnvironmentKnowledge
    parameters: AttackParameters
    parent: Optional[str] = None

    def asset(self, now: float = 0.0) -> Asset:
        return Asset.of(AGENT, created_at=now, agent=self.id, capabilities=list(self.capabilities), host=self.host)

    def to_dict(self) -> Dict[str, object]:
        return {
            "id": self.id,
            "host": str(self.host),
            "capabilities": list(self.capabilities),
            "parent": self.parent,
            "assets": len(self.knowledge),
        }


class AgentRegistry:
    """Agents of one run, in creation order; at most one per host."""

    def __init__(self):
        self._agents: Dict[str, Agent] = {}

    def __len__(self) -> int:
        return len(self._agents)

    def __iter__(self):
        return iter(list(self._agents.values()))

    def get(self, agent_id: str) -> Agent:
        return self._agents[agent_id]

    def on_host(self, host) -> Optional[Agent]:
        for agent in self._agents.values():
            if str(agent.host) == str(host):
                return agent
        return None

    def register(self, agent: Agent) -> Agent:
        self._agents[agent.id] = agent
        return agent

    def create_root(self, host, capabilities: Iterable[str], parameters: AttackParameters,
                    knowledge: EnvironmentKnowledge, now: float = 0.0) -> Agent:
        root = Agent(ROOT_AGENT_ID, host, tuple(capabilities), knowledge, parameters)
        knowledge.insert(root.asset(now))
        return self.register(root)

    def agents(self) -> List[Agent]:
        return list(self._agents.values())


def spawn_agent(registry: AgentRegistry, parent: Agent, host, capabilities: Iterable[str],
                parameters: Optional[AttackParameters] = None, now: float = 0.0) -> Agent:
    """
    Create an agent on host, or return the one already there.

    The AgentAsset lands in the parent's knowledge first, so the child's
    knowledge (a copy of the parent's) knows about itself.
    """
    existing = registry.on_host(host)
    if existing is not None:
        return existing
    child_id = agent_id_for(host)
    asset = Asset.of(AGENT, created_at=now, agent=child_id, capabilities=list(capabilities), host=host)
    parent.knowledge.insert(asset)
    child = Agent(
        id=child_id,
        host=asset["host"],
        capabilities=tuple(str(c) for c in asset["capabilities"]),
        knowledge=parent.knowledge.snapshot(owner=child_id),
        parameters=parameters or parent.parameters,
        parent=parent.id,
    )
    return registry.register(child)


def sync_knowledge(a: Agent, b: Agent) -> int:
    """Merge each agent's assets into the other; returns the number of effective changes."""
    changed = 0
    for asset in a.knowledge.assets:
        changed += b.knowledge.insert(asset).changed
    for asset in b.knowledge.assets:
        changed += a.knowledge.insert(asset).changed
    return changed
