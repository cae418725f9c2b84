"""
TCP connectivity: the direct TCPConnect and the pivoting TCPConnectCreatingHops.
"""

from ..assets import AGENT, TCP_CONNECTIVITY, UNKNOWN, Asset
from ..exceptions import UnplannableError
from ..factories.action_factory import ActionFactory
from ..factories.logger_factory import LoggerFactory
from .base import ActionContext, ActionOutcome, BaseAction

logger = LoggerFactory.get_logger("netattack.catalog")


@ActionFactory.register("TCPConnect")
class TCPConnect(BaseAction):
    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        source, target, port = concrete["source"], concrete["target"], concrete["port"]
        if source is UNKNOWN:
            source = ctx.agent.host
        if port is UNKNOWN:
            return ActionOutcome(success=False, detail="no port to connect to")
        permitted, is_open = ctx.net.tcp_permitted(source, target, port)
        noise = self.noise_at(ctx, target)
        if permitted and is_open:
            asset = Asset.of(TCP_CONNECTIVITY, created_at=ctx.now, source=source, target=target, port=port)
            return ActionOutcome(success=True, produced=[asset], noise=noise)
        refused = Asset.of(TCP_CONNECTIVITY, probability=0.0, created_at=ctx.now,
                           source=source, target=target, port=port)
        reason = "filtered" if not permitted else "closed"
        return ActionOutcome(success=False, produced=[refused], noise=noise, detail=f"{target}:{port} {reason}")


@ActionFactory.register("TCPConnectCreatingHops")
class TCPConnectCreatingHops(BaseAction):
    """
    Reach a port through stepping stones: plan the cheapest pivot path, win an
    agent on every intermediate host, then connect from the last one.
    """

    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        target, port = concrete["target"], concrete["port"]
        if ctx.planner is None or ctx.achieve is None or port is UNKNOWN or target is UNKNOWN:
            return ActionOutcome(success=False, detail="pivoting needs a planner and a concrete target")
        source = concrete["source"] if concrete["source"] is not UNKNOWN else None
        try:
            plan = ctx.planner.plan_pivot(target, port, ctx.env, ctx.now, source=source)
        except UnplannableError as e:
            return ActionOutcome(success=False, detail=str(e))

        logger.info(f"Pivot plan towards {target}:{port}: {' -> '.join(str(h.host) for h in plan.hops)}")
        produced = []
        for reached, hop in enumerate(plan.intermediates):
            judgement = ctx.achieve(Asset.of(AGENT, host=hop.host), via=hop.previous)
            produced.extend(judgement.completed)
            if not judgement.success:
                return ActionOutcome(success=False, produced=produced, hops_added=reached,
                                     detail=f"could not win an agent on {hop.host}")

        last = plan.hops[-2].host
        final = ctx.achieve(Asset.of(TCP_CONNECTIVITY, source=last, target=target, port=port), via=last)
        produced.extend(final.completed)
        return ActionOutcome(
            success=final.success and bool(self.completes_goal(final.completed, concrete)),
            produced=produced,
            hops_added=len(plan.intermediates),
            detail=f"{len(plan.intermediates)} hop(s)",
        )
