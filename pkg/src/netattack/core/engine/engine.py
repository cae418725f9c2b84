"""
The attack engine: drives an objective through the attack graph against a
simulated network.

For every concrete instantiation of a goal the engine first consults the
environment knowledge (zero cost), otherwise ranks the candidate actions,
satisfies the chosen action's requirements recursively, runs it, and on
failure re-ranks and tries the next-best candidate.
"""

import ipaddress
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Union

import numpy as np

import config.settings as settings

from ..actions import ActionSpec, fill_agent_attribute, initialize_requirements, setup_requirements
from ..assets import AGENT, IP_CONNECTIVITY, TCP_CONNECTIVITY, UNKNOWN, Asset, EnvironmentKnowledge
from ..catalog import ActionContext, ActionOutcome, BaseAction, Catalog
from ..catalog.maintenance import host_of
from ..events import (
    ActionCompletedEvent,
    ActionStartedEvent,
    AgentSpawnedEvent,
    AttackFinishedEvent,
    DetectionEvent,
    ErrorEvent,
    EventBus,
    ShortcutEvent,
)
from ..exceptions import ActionUnavailable, UnplannableError
from ..factories.action_factory import ActionFactory
from ..factories.logger_factory import LoggerFactory
from ..goals import Goal, GoalStatus, Judgement, environment_leaf, evaluate
from ..netsim import SimNetwork
from ..planner import GoalNode, PathCost, Planner, TopologyView, evaluate_path
from ...monitoring import metrics
from .agents import Agent, AgentRegistry, ROOT_AGENT_ID, spawn_agent, sync_knowledge
from .budgets import BudgetState, enforce_budgets
from .parameters import AttackerProfile, AttackParameters, get_profile
from .report import AttackReport, TimelineEntry, Verdict

logger = LoggerFactory.get_logger("netattack.engine")

CLEAN_LOGS = "CleanLogs"
DEFAULT_CAPABILITIES = ("shell", "scan", "connect")


class _AttackHalted(Exception):
    """Unwinds the recursive run loop when a budget halts the attack."""

    def __init__(self, verdict: Verdict, reason: str):
        super().__init__(reason)
        self.verdict = verdict
        self.reason = reason


def _profile_of(profile: Union[AttackerProfile, AttackParameters, str]) -> AttackerProfile:
    if isinstance(profile, AttackerProfile):
        return profile
    if isinstance(profile, AttackParameters):
        return AttackerProfile("custom", profile)
    return get_profile(profile)


class AttackEngine:
    """
    Runs objectives against one simulated network.

    Each run works on a clone of the network and its own seeded generator, so
    identical inputs give identical reports.

    Args:
        network: Ground truth; never mutated.
        catalog: Action catalog; the profile picks its portfolio from it.
        attacker_host: Host of the root agent.
        profile: Preset name, AttackerProfile or bare AttackParameters.
        seed: Seed of the run's random generator.
        fingerprints: Banner to OS distribution table.
        knowledge: Persisted root knowledge; the clock resumes at its latest timestamp.
        event_bus: Optional EventBus receiving lifecycle events.
        max_retries: Next-best attempts per goal instantiation after the first failure.
        use_topology: Plan pivots over the declared network layout.
    """

    def __init__(
        self,
        network: SimNetwork,
        catalog: Catalog,
        attacker_host: Any,
        profile: Union[AttackerProfile, AttackParameters, str] = "scriptKiddie",
        seed: int = 0,
        fingerprints: Optional[Mapping[str, Mapping[str, float]]] = None,
        attacker_capabilities: Iterable[str] = DEFAULT_CAPABILITIES,
        knowledge: Optional[EnvironmentKnowledge] = None,
        event_bus: Optional[EventBus] = None,
        max_retries: int = settings.MAX_RETRIES,
        use_topology: bool = True,
        depth_limit: int = settings.GRAPH_DEPTH_LIMIT,
        full_lookahead: bool = settings.FULL_LOOKAHEAD,
        min_trust: float = settings.DEFAULT_MIN_TRUST,
    ):
        self.network = network
        self.catalog = catalog
        self.attacker_host = ipaddress.IPv4Address(str(attacker_host))
        self.profile = _profile_of(profile)
        self.seed = seed
        self.fingerprints = dict(fingerprints or {})
        self.attacker_capabilities = tuple(attacker_capabilities)
        self.knowledge = knowledge
        self.event_bus = event_bus
        self.max_retries = max_retries
        self.use_topology = use_topology
        self.depth_limit = depth_limit
        self.full_lookahead = full_lookahead
        self.min_trust = min_trust

    @property
    def parameters(self) -> AttackParameters:
        return self.profile.parameters

    def portfolio(self) -> List[ActionSpec]:
        params = self.parameters
        return self.catalog.portfolio(params.portfolio, params.max_skill)

    def run(self, objective: Goal) -> AttackReport:
        try:
            return _Run(self, objective).execute()
        except Exception as e:
            if self.event_bus is not None:
                self.event_bus.publish(ErrorEvent(error_type=type(e).__name__, message=str(e),
                                                  context={"profile": self.profile.name, "seed": self.seed}))
            raise


class _Run:
    """State of one attack run."""

    def __init__(self, engine: AttackEngine, objective: Goal):
        self.engine = engine
        self.objective = objective
        self.params = engine.parameters
        self.net = engine.network.clone()
        self.rng = np.random.default_rng(engine.seed)
        self.bus = engine.event_bus

        env = engine.knowledge.snapshot(ROOT_AGENT_ID) if engine.knowledge is not None else EnvironmentKnowledge(ROOT_AGENT_ID)
        if engine.knowledge is not None:
            # Persisted observations are never in the future of the resumed clock.
            self.net.clock = env.latest_timestamp()
        self.started_at = self.net.clock

        self.registry = AgentRegistry()
        self.root = self.registry.create_root(engine.attacker_host, engine.attacker_capabilities,
                                              self.params, env, self.net.clock)
        for asset in env.agents():
            host = asset["host"]
            if host is UNKNOWN or self.registry.on_host(host) is not None:
                continue
            capabilities = [str(c) for c in asset["capabilities"]] if asset["capabilities"] is not UNKNOWN else []
            spawn_agent(self.registry, self.root, host, capabilities, now=asset.created_at)

        self.specs = engine.portfolio()
        self.planner = Planner(
            self.specs,
            self.params,
            topology=TopologyView(self.net) if engine.use_topology else None,
            depth_limit=engine.depth_limit,
            full_lookahead=engine.full_lookahead,
            min_trust=engine.min_trust,
        )
        self.report = AttackReport(
            profile=engine.profile.name,
            seed=engine.seed,
            objective=objective.to_dict(),
            started_at=self.started_at,
        )
        self._gained: Dict[Hashable, int] = {}
        self.halted = False
        self._realized: List[PathCost] = []

    # -- top level -----------------------------------------------------------

    def execute(self) -> AttackReport:
        logger.info(f"🎯 Attack {self.report.profile} (seed {self.engine.seed}) on {self.objective.describe()}")
        judgement: Optional[Judgement] = None
        try:
            try:
                graph = self.planner.build(self.objective)
            except UnplannableError as e:
                logger.warning(f"Objective unplannable: {e}")
                self.report.halt_reason = str(e)
                judgement = evaluate(self.objective, lambda t: self.shortcut(t) or Judgement.leaf(t, GoalStatus.FAILURE))
            else:
                judgement = evaluate(self.objective, lambda t: self.attempt(graph.root, t))
        except _AttackHalted as halt:
            logger.info(f"⛔ Attack halted: {halt.reason}")
            self.halted = True
            self.report.verdict = halt.verdict
            self.report.halt_reason = halt.reason
        if judgement is not None:
            self.report.objective_achieved = judgement.success
            if judgement.success:
                self.report.success_time = self.net.clock
        return self.finish()

    def finish(self) -> AttackReport:
        report = self.report
        report.finished_at = self.net.clock
        report.detections = list(self.net.detections())
        if report.objective_achieved:
            report.verdict = Verdict.DETECTED_BEFORE_SUCCESS if report.detected_before_success else Verdict.SUCCESS
        elif not self.halted:
            report.verdict = Verdict.FAILURE
        report.final_cost = evaluate_path(self._realized)
        report.noise_ledger = list(self.net.ledger)
        report.sensors = [s.to_dict() for s in self.net.sensors]
        report.agents = [a.to_dict() for a in self.registry]
        report.knowledge = self.root.knowledge
        metrics.record_run(report.verdict.value, report.finished_at - report.started_at)
        self.publish(AttackFinishedEvent(profile=report.profile, seed=report.seed, verdict=report.verdict.value,
                                         sim_time=self.net.clock, actions=len(report.timeline)))
        logger.info(f"🏁 Verdict {report.verdict.value} after {len(report.timeline)} action(s), "
                    f"t={report.finished_at:.1f}s")
        return report

    def publish(self, event) -> None:
        if self.bus is not None:
            self.bus.publish(event)

    # -- goals -----------------------------------------------------------------

    def shortcut(self, template: Asset) -> Optional[Judgement]:
        """Decide template from the root knowledge alone, or None."""
        leaf = environment_leaf(template, self.root.knowledge, self.net.clock, self.engine.min_trust)
        if not leaf.decided:
            return None
        self.report.shortcuts.append({
            "time": self.net.clock,
            "asset": template.to_dict(),
            "status": leaf.status.value,
        })
        self.publish(ShortcutEvent(asset=template.describe(), success=leaf.success, sim_time=self.net.clock))
        logger.debug(f"Decided from knowledge: {template.describe()} -> {leaf.status.value}")
        return leaf

    def attempt(self, node: GoalNode, template: Asset, exclude_high_level: bool = False,
                via: Any = None) -> Judgement:
        """Complete one concrete template, trying candidates best first."""
        known = self.shortcut(template)
        if known is not None:
            return known
        node = node.resolve()
        tried: Set[str] = set()
        failures = 0
        while True:
            ranked = self.planner.rank_candidates(node, self.root.knowledge, self.net.clock, template,
                                                  exclude=tried, exclude_high_level=exclude_high_level)
            if not ranked:
                return Judgement.leaf(template, GoalStatus.FAILURE)
            candidate = ranked[0]
            tried.add(candidate.name)
            # Hopeless or forbidden candidates are skipped, not counted as retries.
            no_route = candidate.pivot and candidate.cost.success_probability <= 0
            if candidate.infeasible or no_route or candidate.own_cost.success_probability <= 0:
                logger.debug(f"Skipping {candidate.name} for {template.describe()}")
                continue
            try:
                judgement = self.run_action(candidate, node, template, exclude_high_level, via)
            except ActionUnavailable as e:
                logger.debug(f"{candidate.name} unavailable: {e}")
                continue
            if judgement.success:
                return judgement
            failures += 1
            if failures > self.engine.max_retries:
                return Judgement.leaf(template, GoalStatus.FAILURE)
            # A failed attempt may have recorded a negative for this exact template.
            known = self.shortcut(template)
            if known is not None:
                return known

    def achieve(self, template: Asset, via: Any = None) -> Judgement:
        """Sub-objective hook for high-level actions; never pivots again."""
        try:
            graph = self.planner.build(Goal(template))
        except UnplannableError:
            return self.shortcut(template) or Judgement.leaf(template, GoalStatus.FAILURE)
        return self.attempt(graph.root, template, exclude_high_level=True, via=via)

    # -- actions ---------------------------------------------------------------

    def run_action(self, candidate, node: GoalNode, template: Asset, exclude_high_level: bool,
                   via: Any) -> Judgement:
        spec = candidate.spec
        action = ActionFactory.create(spec)
        concrete = template
        agent: Optional[Agent] = None
        if spec.agent_attribute is not None and template[spec.agent_attribute] is UNKNOWN:
            agent = self.select_agent(spec, template, [], via)
            concrete = fill_agent_attribute(spec, template, agent.host)

        completed: List[Asset] = []
        if not candidate.pivot:
            goals = setup_requirements(spec, concrete, initialize_requirements(spec, node.goal))
            for requirement_node, goal in zip(candidate.node.requirements, goals):
                judgement = evaluate(
                    goal, lambda t, n=requirement_node: self.attempt(n, t, exclude_high_level, via)
                )
                if not judgement.success:
                    logger.info(f"❌ {spec.name}: requirement {goal.describe()} not met")
                    return Judgement.leaf(template, GoalStatus.FAILURE)
                completed.extend(judgement.completed)

        if agent is None:
            agent = self.select_agent(spec, concrete, completed, via)
        pinned = concrete[spec.agent_attribute] if spec.agent_attribute is not None else UNKNOWN
        if pinned is not UNKNOWN and str(pinned) != str(agent.host):
            logger.info(f"❌ {spec.name}: no agent on {pinned}")
            return Judgement.leaf(template, GoalStatus.FAILURE)
        if agent is not self.root:
            sync_knowledge(self.root, agent)

        ctx = ActionContext(
            agent=agent,
            env=agent.knowledge,
            net=self.net,
            rng=self.rng,
            params=agent.parameters,
            cost=candidate.own_cost,
            now=self.net.clock,
            fingerprints=self.engine.fingerprints,
            planner=self.planner,
            achieve=self.achieve,
        )
        self.publish(ActionStartedEvent(agent=agent.id, action=spec.name, asset=concrete.describe(),
                                        sim_time=self.net.clock))
        logger.info(f"▶️ {agent.id} runs {spec.name} on {concrete.describe()}")
        outcome = action.execute(ctx, concrete)
        produced = self.record(agent, spec, concrete, outcome, candidate.own_cost.with_hops(outcome.hops_added))
        done = BaseAction.completes_goal(produced, concrete) if outcome.success else []

        if outcome.success and CLEAN_LOGS in self.planner_names and spec.name != CLEAN_LOGS:
            self.clean_logs(agent, concrete)
        self.check_budgets()
        return Judgement.leaf(template, GoalStatus.SUCCESS if done else GoalStatus.FAILURE, done)

    @property
    def planner_names(self) -> Set[str]:
        return {s.name for s in self.specs}

    def clean_logs(self, agent: Agent, concrete: Asset) -> None:
        host = host_of(concrete)
        if host is None or not self.net.residue(host):
            return
        spec = next(s for s in self.specs if s.name == CLEAN_LOGS)
        action = ActionFactory.create(spec)
        ctx = ActionContext(agent=agent, env=agent.knowledge, net=self.net, rng=self.rng, params=agent.parameters,
                            cost=spec.base_cost, now=self.net.clock, fingerprints=self.engine.fingerprints)
        try:
            outcome = action.execute(ctx, concrete)
        except ActionUnavailable:
            return
        self.record(agent, spec, concrete, outcome, spec.base_cost)

    def record(self, agent: Agent, spec: ActionSpec, concrete: Asset, outcome: ActionOutcome, cost) -> List[Asset]:
        """Book an executed action: clock, knowledge, agents, noise, timeline, metrics."""
        net = self.net
        net.advance(outcome.elapsed)
        now = net.clock
        produced = [a.with_values(created_at=now) for a in outcome.produced]
        for asset in produced:
            agent.knowledge.insert(asset)
            if agent is not self.root:
                self.root.knowledge.insert(asset)
            if asset.probability > 0:
                key = asset.signature()
                if key in self._gained:
                    self.report.assets_gained[self._gained[key]] = asset
                else:
                    self._gained[key] = len(self.report.assets_gained)
                    self.report.assets_gained.append(asset)
            if asset.kind.name == AGENT.name and asset.probability >= 1.0 and outcome.success:
                self.spawn(agent, asset, now)

        first_record = len(net.noise_log)
        detected = net.emit_noise(outcome.noise, time=now, action=spec.name)
        outcome.noise_records = list(range(first_record, len(net.noise_log)))
        net.clean_noise(outcome, outcome.success)
        noise: Dict[str, float] = {}
        for _, event in outcome.noise:
            noise[event.sensor_category] = noise.get(event.sensor_category, 0.0) + event.magnitude

        sensors = {s.id: s for s in net.sensors}
        for sensor_id in detected:
            category = sensors[sensor_id].category
            metrics.record_detection(category)
            self.publish(DetectionEvent(sensor=sensor_id, category=category, sim_time=now))

        success = outcome.success
        if success:
            self._realized.append(PathCost.from_action(cost))
        self.report.timeline.append(TimelineEntry(
            time=now,
            agent=agent.id,
            action=spec.name,
            asset=concrete.to_dict(),
            success=success,
            produced=[a.to_dict() for a in produced],
            noise={k: noise[k] for k in sorted(noise)},
            elapsed=outcome.elapsed,
            cost=PathCost.from_action(cost),
            hops=outcome.hops_added,
            detail=outcome.detail,
        ))
        metrics.record_action(spec.name, success)
        self.publish(ActionCompletedEvent(agent=agent.id, action=spec.name, asset=concrete.describe(),
                                          success=success, sim_time=now, elapsed=outcome.elapsed))
        logger.info(f"{'✅' if success else '❌'} {spec.name} {'succeeded' if success else 'failed'} "
                    f"at t={now:.1f}s {outcome.detail}".rstrip())
        return produced

    def spawn(self, parent: Agent, asset: Asset, now: float) -> None:
        if self.registry.on_host(asset["host"]) is not None:
            return
        capabilities = [str(c) for c in asset["capabilities"]] if asset["capabilities"] is not UNKNOWN else []
        child = spawn_agent(self.registry, parent, asset["host"], capabilities, now=now)
        if parent is not self.root:
            self.root.knowledge.insert(child.asset(now))
        self.publish(AgentSpawnedEvent(agent=child.id, host=str(child.host), parent=parent.id, sim_time=now))
        logger.info(f"🤖 New agent {child.id} on {child.host}")

    def check_budgets(self) -> None:
        state = BudgetState(
            started_at=self.started_at,
            clock=self.net.clock,
            noise=self.net.uncleaned_noise(),
            detections=list(self.net.detections()),
        )
        decision = enforce_budgets(state, self.params)
        if decision.halt:
            raise _AttackHalted(decision.verdict, decision.reason)

    # -- agent choice ----------------------------------------------------------

    def select_agent(self, spec: ActionSpec, concrete: Asset, completed: Sequence[Asset], via: Any) -> Agent:
        """
        Executing agent: the host the action is pinned to, else the requested
        pivot, else an agent on the target, else the source of a completed
        requirement, else an agent known to reach the target, else the root.
        """
        if spec.agent_attribute is not None and concrete[spec.agent_attribute] is not UNKNOWN:
            agent = self.registry.on_host(concrete[spec.agent_attribute])
            if agent is not None:
                return agent
        if via is not None:
            agent = self.registry.on_host(via)
            if agent is not None:
                return agent
        destination = UNKNOWN
        for attr in ("host", "target"):
            value = concrete.get(attr)
            if value is not UNKNOWN:
                destination = value
                agent = self.registry.on_host(value)
                if agent is not None and concrete.kind.name != AGENT.name:
                    return agent
                break
        for asset in completed:
            source = asset.get("source")
            if source is not UNKNOWN:
                agent = self.registry.on_host(source)
                if agent is not None:
                    return agent
        if destination is not UNKNOWN:
            for agent in self.registry:
                for kind in (IP_CONNECTIVITY, TCP_CONNECTIVITY):
                    probe = Asset.of(kind, source=agent.host, target=destination)
                    if any(a.probability > 0 for a in self.root.knowledge.query(probe)):
                        return agent
        return self.root


def run_attack(
    network: SimNetwork,
    catalog: Catalog,
    objective: Goal,
    attacker_host: Any,
    profile: Union[AttackerProfile, AttackParameters, str] = "scriptKiddie",
    seed: int = 0,
    **kwargs: Any,
) -> AttackReport:
    """One-shot convenience wrapper around AttackEngine."""
    return AttackEngine(network, catalog, attacker_host, profile=profile, seed=seed, **kwargs).run(objective)
