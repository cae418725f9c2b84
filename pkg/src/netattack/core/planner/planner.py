"""
Runtime action selection and pivot planning.

Costs are delayed: every ranking recomputes effective costs against the
environment snapshot it is given, so fresh assets change the choice.
"""

import ipaddress
import weakref
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

import config.settings as settings

from ..actions import ActionCost, ActionSpec, effective_cost, initialize_requirements, provides_match
from ..assets import AGENT, TCP_CONNECTIVITY, UNKNOWN, AttrCategory, Asset, EnvironmentKnowledge
from ..exceptions import UnplannableError
from ..factories.logger_factory import LoggerFactory
from ..goals import Goal, environment_leaf, satisfied_by_environment
from .costs import IDENTITY, PathCost, evaluate_path, is_feasible, scalarize
from .graph import ActionNode, AttackGraph, GoalNode, build_graph
from .topology import TopologyView

logger = LoggerFactory.get_logger("netattack.planner")

UNREACHABLE = PathCost(success_probability=0.0)


def _ip(address: Any) -> ipaddress.IPv4Address:
    return address if isinstance(address, ipaddress.IPv4Address) else ipaddress.IPv4Address(address)


@dataclass
class Candidate:
    """One action ranked at a goal node."""

    node: ActionNode
    # Own effective cost plus, under full lookahead, the cheapest requirement subpaths.
    cost: PathCost
    own_cost: ActionCost
    infeasible: bool
    scalar: float
    pivot_plan: Optional["PivotPlan"] = None

    @property
    def spec(self) -> ActionSpec:
        return self.node.spec

    @property
    def name(self) -> str:
        return self.node.spec.name

    @property
    def index(self) -> int:
        return self.node.index

    @property
    def pivot(self) -> bool:
        return self.node.pivot

    def key(self) -> Tuple[bool, float, int]:
        return (self.infeasible, self.scalar, self.node.index)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "action": self.name,
            "cost": self.cost.to_dict(),
            "ownCost": self.own_cost.to_dict(),
            "scalar": self.scalar,
            "feasible": not self.infeasible,
        }
        if self.pivot_plan is not None:
            data["pivotPlan"] = self.pivot_plan.to_dict()
        return data


@dataclass
class PivotHop:
    host: ipaddress.IPv4Address
    previous: Optional[ipaddress.IPv4Address] = None
    # Best plan for this edge; None on the starting host.
    subplan: Optional[Candidate] = None
    cost: PathCost = IDENTITY

    def to_dict(self) -> Dict[str, Any]:
        return {
            "host": str(self.host),
            "previous": str(self.previous) if self.previous is not None else None,
            "action": self.subplan.name if self.subplan is not None else None,
            "cost": self.cost.to_dict(),
        }


@dataclass
class PivotPlan:
    """Source agent host first, target last, agents to win in between."""

    hops: List[PivotHop]
    total_cost: PathCost
    weight: float

    @property
    def source(self) -> ipaddress.IPv4Address:
        return self.hops[0].host

    @property
    def intermediates(self) -> List[PivotHop]:
        return self.hops[1:-1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "hops": [h.to_dict() for h in self.hops],
            "totalCost": self.total_cost.to_dict(),
            "weight": self.weight,
        }


@dataclass
class _Edge:
    weight: float
    cost: PathCost
    candidate: Optional[Candidate] = None


def _about(asset: Asset, hosts: Set[ipaddress.IPv4Address]) -> bool:
    addresses = [
        asset.attrs[attr] for attr, category in asset.kind.schema
        if category is AttrCategory.ADDRESS and asset.attrs[attr] is not UNKNOWN
    ]
    return bool(addresses) and all(a in hosts for a in addresses)


def hypothetical_env(env: EnvironmentKnowledge, source: Any, target: Any, now: float) -> EnvironmentKnowledge:
    """
    Two-host knowledge store: what env knows about source and target only,
    plus an imaginary agent on source.
    """
    source, target = _ip(source), _ip(target)
    hyp = EnvironmentKnowledge(f"hypothetical@{source}", env.half_life)
    for asset in env:
        if _about(asset, {source, target}):
            hyp.insert(asset)
    hyp.insert(Asset.of(AGENT, created_at=now, agent=f"imaginary@{source}", host=source))
    return hyp


class Planner:
    """
    Ranks the actions of attack-graph goal nodes and plans pivots.

    Args:
        specs: The attacker's portfolio, in catalog order.
        params: AttackParameters driving scalarization and feasibility.
        topology: Network view for pivot planning; without it pivots cost their base cost.
        depth_limit: Goal layers per graph.
        full_lookahead: Include requirement subpath costs when ranking siblings.
        min_trust: Trust floor for the environment shortcut.
    """

    def __init__(
        self,
        specs: Sequence[ActionSpec],
        params: Any,
        topology: Optional[TopologyView] = None,
        depth_limit: int = settings.GRAPH_DEPTH_LIMIT,
        full_lookahead: bool = settings.FULL_LOOKAHEAD,
        min_trust: float = settings.DEFAULT_MIN_TRUST,
    ):
        self.specs = list(specs)
        self.params = params
        self.topology = topology
        self.depth_limit = depth_limit
        self.full_lookahead = full_lookahead
        self.min_trust = min_trust
        self._graphs: Dict[Hashable, AttackGraph] = {}
        self._edges: "weakref.WeakKeyDictionary[EnvironmentKnowledge, Dict[Hashable, Optional[_Edge]]]" = (
            weakref.WeakKeyDictionary()
        )

    def build(self, goal: Goal) -> AttackGraph:
        key = goal.signature()
        graph = self._graphs.get(key)
        if graph is None:
            graph = build_graph(goal, self.specs, self.depth_limit)
            self._graphs[key] = graph
        return graph

    # -- selection ---------------------------------------------------------

    def rank_candidates(
        self,
        node: GoalNode,
        env: EnvironmentKnowledge,
        now: float = 0.0,
        template: Optional[Asset] = None,
        exclude: Iterable[str] = (),
        exclude_high_level: bool = False,
    ) -> List[Candidate]:
        """Candidates of node for template (default: the node's own template), best first."""
        node = node.resolve()
        return self._rank(
            node, env, now,
            template if template is not None else node.goal.template,
            frozenset(exclude), exclude_high_level,
            visiting=frozenset({node.key}), memo={},
        )

    def choose_action(self, node: GoalNode, env: EnvironmentKnowledge, now: float = 0.0,
                      template: Optional[Asset] = None, exclude: Iterable[str] = ()) -> Candidate:
        ranked = self.rank_candidates(node, env, now, template, exclude)
        if not ranked:
            raise UnplannableError(f"no candidate action left for {node.goal.describe()}")
        return ranked[0]

    def _rank(self, node: GoalNode, env: EnvironmentKnowledge, now: float, template: Asset,
              exclude: FrozenSet[str], exclude_high_level: bool,
              visiting: FrozenSet[Hashable], memo: Dict[Hashable, PathCost]) -> List[Candidate]:
        candidates = []
        for action in node.children:
            spec = action.spec
            if spec.name in exclude or (action.pivot and exclude_high_level):
                continue
            if not provides_match(spec, template):
                continue
            own = effective_cost(spec, env, now, concrete=template)
            plan = None
            if action.pivot:
                cost, plan = self._pivot_cost(own, template, env, now)
            else:
                cost = PathCost.from_action(own)
                if self.full_lookahead:
                    cost = self._with_requirements(action, template, cost, env, now,
                                                   exclude_high_level, visiting, memo)
            candidates.append(Candidate(
                node=action,
                cost=cost,
                own_cost=own,
                infeasible=not is_feasible(cost, self.params),
                scalar=scalarize(cost, self.params),
                pivot_plan=plan,
            ))
        candidates.sort(key=Candidate.key)
        return candidates

    def _with_requirements(self, action: ActionNode, template: Asset, cost: PathCost, env: EnvironmentKnowledge,
                           now: float, exclude_high_level: bool, visiting: FrozenSet[Hashable],
                           memo: Dict[Hashable, PathCost]) -> PathCost:
        goals = initialize_requirements(action.spec, Goal(template))
        for requirement_node, goal in zip(action.requirements, goals):
            cost = cost.combine(self._requirement_cost(requirement_node, goal, env, now,
                                                       exclude_high_level, visiting, memo))
        return cost

    def _requirement_cost(self, node: GoalNode, goal: Goal, env: EnvironmentKnowledge, now: float,
                          exclude_high_level: bool, visiting: FrozenSet[Hashable],
                          memo: Dict[Hashable, PathCost]) -> PathCost:
        memo_key = (goal.signature(), exclude_high_level)
        if memo_key in memo:
            return memo[memo_key]
        known = satisfied_by_environment(goal, env, now, self.min_trust)
        if known is not None:
            cost = IDENTITY if known.success else UNREACHABLE
        else:
            target = node.resolve()
            if target.key in visiting or target.truncated or not target.children:
                cost = UNREACHABLE
            else:
                # The quantified collection is costed as a single element.
                ranked = self._rank(target, env, now, goal.template, frozenset(), exclude_high_level,
                                    visiting | {target.key}, memo)
                cost = ranked[0].cost if ranked else UNREACHABLE
        memo[memo_key] = cost
        return cost

    def _pivot_cost(self, own: ActionCost, template: Asset, env: EnvironmentKnowledge,
                    now: float) -> Tuple[PathCost, Optional[PivotPlan]]:
        base = PathCost.from_action(own)
        target, port = template.get("target"), template.get("port")
        if self.topology is None or target is UNKNOWN or port is UNKNOWN:
            return base, None
        source = template.get("source")
        try:
            plan = self.plan_pivot(target, port, env, now, source=None if source is UNKNOWN else source)
        except UnplannableError:
            return base.with_probability(0.0), None
        return plan.total_cost.combine(base.with_hops(0)), plan

    # -- pivoting ----------------------------------------------------------

    def pivot_graph(self, target: Any, port: int, env: EnvironmentKnowledge, now: float = 0.0,
                    source: Any = None) -> Tuple[nx.DiGraph, List[ipaddress.IPv4Address]]:
        """
        Weighted host graph used by plan_pivot, and its source hosts.

        Edge u->v into an intermediate host weighs the best plan winning an
        agent on v from u; the edge into the target weighs the best direct
        connection to target:port. Weights are scalarized costs, so they add.
        """
        if self.topology is None:
            raise UnplannableError("pivot planning needs a network topology")
        target = _ip(target)
        held = sorted({_ip(a["host"]) for a in env.agents() if a["host"] is not UNKNOWN})
        sources = [_ip(source)] if source is not None else held
        sources = [s for s in sources if s != target]

        hosts = list(self.topology.hosts())
        for extra in [target] + sources:
            if extra not in hosts:
                hosts.append(extra)
        g = nx.DiGraph()
        g.add_nodes_from(hosts)
        for u in hosts:
            if u == target:
                continue
            for v in hosts:
                if u == v or (v in held and v != target):
                    continue
                edge = self._reach_edge(u, target, port, env, now) if v == target else self._win_edge(u, v, env, now)
                if edge is not None:
                    g.add_edge(u, v, weight=edge.weight, cost=edge.cost, candidate=edge.candidate)
        return g, sources

    def plan_pivot(self, target: Any, port: int, env: EnvironmentKnowledge, now: float = 0.0,
                   source: Any = None) -> PivotPlan:
        """
        Cheapest stepping-stone path from an agent-held host (or source) to target:port.

        Raises:
            UnplannableError: No agent to start from, or no path.
        """
        g, sources = self.pivot_graph(target, port, env, now, source)
        target = _ip(target)
        if not sources:
            raise UnplannableError(f"no agent to pivot from towards {target}")
        try:
            weight, path = nx.multi_source_dijkstra(g, sources, target=target, weight="weight")
        except (nx.NetworkXNoPath, nx.NodeNotFound) as e:
            raise UnplannableError(f"no pivot path to {target}:{port}") from e

        hops = [PivotHop(host=path[0])]
        costs = []
        for previous, host in zip(path, path[1:]):
            data = g.edges[previous, host]
            hops.append(PivotHop(host=host, previous=previous, subplan=data["candidate"], cost=data["cost"]))
            costs.append(data["cost"].with_hops(0))
        total = evaluate_path(costs)
        plan = PivotPlan(hops=hops, total_cost=total.with_hops(len(path) - 2), weight=weight)
        logger.debug(f"Pivot plan to {target}:{port} via {[str(h) for h in path]} (weight {weight:.4f})")
        return plan

    def _edge_cache(self, env: EnvironmentKnowledge) -> Dict[Hashable, Optional[_Edge]]:
        cache = self._edges.get(env)
        if cache is None:
            cache = {}
            self._edges[env] = cache
        return cache

    def _best_edge(self, graph: AttackGraph, hyp: EnvironmentKnowledge, now: float,
                   exclude: Iterable[str] = (), hops: Optional[int] = None) -> Optional[_Edge]:
        for candidate in self.rank_candidates(graph.root, hyp, now, exclude=exclude, exclude_high_level=True):
            if candidate.infeasible or candidate.cost.success_probability <= 0:
                continue
            cost = candidate.cost if hops is None else candidate.cost.with_hops(hops)
            return _Edge(scalarize(cost, self.params), cost, candidate)
        return None

    def _win_edge(self, u: ipaddress.IPv4Address, v: ipaddress.IPv4Address, env: EnvironmentKnowledge,
                  now: float) -> Optional[_Edge]:
        allowed = [
            s.name for s in self.specs
            if s.is_exploit and s.provides is not None and s.provides.kind.name == AGENT.name
            and s.port is not None and self.topology.link(u, v, s.port, env)
        ]
        if not allowed:
            return None
        key = ("win", u, v, tuple(allowed), env.revision, now)
        cache = self._edge_cache(env)
        if key not in cache:
            edge = None
            try:
                graph = self.build(Goal(Asset.of(AGENT, host=v)))
            except UnplannableError:
                graph = None
            if graph is not None:
                exclude = [a.name for a in graph.root.children if a.name not in allowed]
                edge = self._best_edge(graph, hypothetical_env(env, u, v, now), now, exclude, hops=1)
            cache[key] = edge
        return cache[key]

    def _reach_edge(self, u: ipaddress.IPv4Address, target: ipaddress.IPv4Address, port: int,
                    env: EnvironmentKnowledge, now: float) -> Optional[_Edge]:
        if not self.topology.link(u, target, port, env):
            return None
        key = ("reach", u, target, int(port), env.revision, now)
        cache = self._edge_cache(env)
        if key not in cache:
            template = Asset.of(TCP_CONNECTIVITY, source=u, target=target, port=port)
            hyp = hypothetical_env(env, u, target, now)
            if environment_leaf(template, hyp, now, self.min_trust).success:
                edge: Optional[_Edge] = _Edge(0.0, IDENTITY)
            else:
                try:
                    edge = self._best_edge(self.build(Goal(template)), hyp, now)
                except UnplannableError:
                    edge = None
            cache[key] = edge
        return cache[key]

    # -- plan output ---------------------------------------------------------

    def describe(self, graph: AttackGraph, env: EnvironmentKnowledge, now: float = 0.0) -> Dict[str, Any]:
        """Goal/action tree with per-node costs; `selected` marks the path the engine would take first."""
        return self._describe_goal(graph.root, env, now, set(), selected=True)

    def _describe_goal(self, node: GoalNode, env: EnvironmentKnowledge, now: float,
                       seen: Set[Hashable], selected: bool) -> Dict[str, Any]:
        data: Dict[str, Any] = {"goal": node.goal.describe(), "depth": node.depth, "selected": selected}
        node = node.resolve()
        if node.key in seen:
            data["cycle"] = True
            return data
        if node.truncated:
            data["truncated"] = True
            return data
        seen = seen | {node.key}
        ranked = self.rank_candidates(node, env, now)
        best = next((c.name for c in ranked if not c.infeasible), None)
        actions = []
        for candidate in ranked:
            entry = candidate.to_dict()
            chosen = selected and candidate.name == best
            entry["selected"] = chosen
            if not candidate.pivot:
                entry["requirements"] = [
                    self._describe_goal(r, env, now, seen, chosen) for r in candidate.node.requirements
                ]
            actions.append(entry)
        data["actions"] = actions
        return data
