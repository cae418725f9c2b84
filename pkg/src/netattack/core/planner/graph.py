"""
Lazy attack graph: alternating goal and action layers.

Quantifiers are not expanded during construction; a quantified goal is one
node standing for its whole collection. Recursion stops at the depth limit,
on a goal already being expanded on the current path (cycle cut), and at
high-level pivot tasks, which are leaves.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterator, List, Optional, Sequence

import config.settings as settings

from ..actions import ActionSpec, initialize_requirements, provides_match
from ..exceptions import ConfigurationError, UnplannableError
from ..factories.logger_factory import LoggerFactory
from ..goals import Goal

logger = LoggerFactory.get_logger("netattack.planner")


@dataclass(eq=False)
class GoalNode:
    goal: Goal
    key: Hashable
    depth: int
    children: List["ActionNode"] = field(default_factory=list)
    truncated: bool = False
    # Set on cycle-cut nodes: the node already being expanded higher on the path.
    ref: Optional["GoalNode"] = None

    @property
    def cut(self) -> bool:
        return self.ref is not None

    def resolve(self) -> "GoalNode":
        return self.ref if self.ref is not None else self

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"goal": self.goal.describe(), "depth": self.depth}
        if self.cut:
            data["cycle"] = True
        elif self.truncated:
            data["truncated"] = True
        else:
            data["actions"] = [a.to_dict() for a in self.children]
        return data


@dataclass(eq=False)
class ActionNode:
    spec: ActionSpec
    index: int
    depth: int
    requirements: List[GoalNode] = field(default_factory=list)
    # High-level agent-creating task: a leaf planned by pivot search.
    pivot: bool = False

    @property
    def name(self) -> str:
        return self.spec.name

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"action": self.spec.name}
        if self.pivot:
            data["pivot"] = True
        else:
            data["requirements"] = [r.to_dict() for r in self.requirements]
        return data


@dataclass
class AttackGraph:
    root: GoalNode
    nodes: Dict[Hashable, GoalNode]

    def goal_nodes(self) -> Iterator[GoalNode]:
        return iter(self.nodes.values())

    def action_nodes(self) -> Iterator[ActionNode]:
        for node in self.nodes.values():
            yield from node.children

    def size(self) -> int:
        return len(self.nodes) + sum(len(n.children) for n in self.nodes.values())

    def to_dict(self) -> Dict[str, Any]:
        return self.root.to_dict()


def build_graph(goal: Goal, specs: Sequence[ActionSpec], depth_limit: int = settings.GRAPH_DEPTH_LIMIT) -> AttackGraph:
    """
    Build the graph rooted at goal over specs (in declaration order).

    Raises:
        ConfigurationError: depth_limit below 1.
        UnplannableError: no spec provides the root goal.
    """
    if depth_limit < 1:
        raise ConfigurationError(f"graph depth limit must be at least 1, got {depth_limit}")
    nodes: Dict[Hashable, GoalNode] = {}
    expanding: Dict[Hashable, GoalNode] = {}

    def goal_node(g: Goal, depth: int) -> GoalNode:
        key = g.signature()
        if key in expanding:
            return GoalNode(goal=g, key=key, depth=depth, ref=expanding[key])
        if key in nodes:
            return nodes[key]
        node = GoalNode(goal=g, key=key, depth=depth)
        nodes[key] = node
        if depth > depth_limit:
            node.truncated = True
            return node
        expanding[key] = node
        for index, spec in enumerate(specs):
            if not provides_match(spec, g.template):
                continue
            if spec.name not in g.candidate_actions:
                g.candidate_actions.append(spec.name)
            action = ActionNode(spec=spec, index=index, depth=depth, pivot=spec.high_level)
            if not spec.high_level:
                for requirement in initialize_requirements(spec, g):
                    action.requirements.append(goal_node(requirement, depth + 1))
            node.children.append(action)
        del expanding[key]
        return node

    root = goal_node(goal, 1)
    if not root.children:
        raise UnplannableError(f"no action provides {goal.describe()}")
    graph = AttackGraph(root=root, nodes=nodes)
    logger.debug(f"Built attack graph for {goal.describe()}: {len(nodes)} goal node(s), {graph.size()} node(s)")
    return graph
