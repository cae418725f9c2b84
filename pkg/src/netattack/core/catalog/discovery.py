"""
Information gathering at the IP and port level: NetworkDiscovery, IPConnect, PortScan.
"""

import ipaddress
from typing import List, Optional

from ..assets import IP_CONNECTIVITY, PORT, UNKNOWN, Asset, Symbol
from ..factories.action_factory import ActionFactory
from ..goals import NetblockDomain
from .base import ActionContext, ActionOutcome, BaseAction


def negative_ip_connectivity(ctx: ActionContext, source, target) -> Asset:
    return Asset.of(IP_CONNECTIVITY, probability=0.0, created_at=ctx.now, source=source, target=target)


@ActionFactory.register("NetworkDiscovery")
class NetworkDiscovery(BaseAction):
    """Sweep a netblock and report every live host routable from the agent."""

    def netblock_for(self, ctx: ActionContext, concrete: Asset) -> Optional[ipaddress.IPv4Network]:
        configured = self.spec.options.get("netblock")
        if configured:
            return ipaddress.IPv4Network(configured, strict=False)
        target = concrete.get("target")
        if target is UNKNOWN:
            return None
        return ctx.net.subnet_of(target) or ipaddress.IPv4Network(f"{target}/24", strict=False)

    def discover(self, ctx: ActionContext, netblock) -> ActionOutcome:
        source = ctx.agent.host
        produced: List[Asset] = []
        noise = []
        for address in NetblockDomain(netblock):
            noise.extend(self.noise_at(ctx, address))
            if ctx.net.host(address) is not None and ctx.net.routable(source, address):
                produced.append(Asset.of(IP_CONNECTIVITY, created_at=ctx.now, source=source, target=address))
        return ActionOutcome(success=bool(produced), produced=produced, noise=noise,
                             detail=f"{len(produced)} reachable host(s) in {netblock}")

    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        netblock = self.netblock_for(ctx, concrete)
        if netblock is None:
            return ActionOutcome(success=False, detail="no netblock to sweep")
        outcome = self.discover(ctx, netblock)
        if concrete["target"] is not UNKNOWN:
            outcome.success = bool(self.completes_goal(outcome.produced, concrete))
        return outcome


@ActionFactory.register("IPConnect")
class IPConnect(BaseAction):
    """Route reachability towards a single host."""

    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        source, target = concrete["source"], concrete["target"]
        if source is UNKNOWN:
            source = ctx.agent.host
        noise = self.noise_at(ctx, target)
        if ctx.net.host(target) is not None and ctx.net.routable(source, target):
            asset = Asset.of(IP_CONNECTIVITY, created_at=ctx.now, source=source, target=target)
            return ActionOutcome(success=True, produced=[asset], noise=noise)
        return ActionOutcome(success=False, produced=[negative_ip_connectivity(ctx, source, target)],
                             noise=noise, detail=f"{target} unreachable from {source}")


@ActionFactory.register("PortScan")
class PortScan(BaseAction):
    """
    Probe one port per concrete goal asset. Quantified port goals are walked
    by the caller, one probe per instantiation.
    """

    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        host, port = concrete["host"], concrete["port"]
        source = ctx.agent.host
        if port is UNKNOWN:
            return ActionOutcome(success=False, detail="no port to probe")
        if not ctx.net.routable(source, host):
            return ActionOutcome(success=False, produced=[negative_ip_connectivity(ctx, source, host)],
                                 detail=f"{host} unroutable from {source}")
        permitted, is_open = ctx.net.tcp_permitted(source, host, port)
        status = Symbol("open") if permitted and is_open else Symbol("closed")
        asset = Asset.of(PORT, created_at=ctx.now, host=host, port=port, status=status)
        return ActionOutcome(
            success=bool(self.completes_goal([asset], concrete)),
            produced=[asset],
            noise=self.noise_at(ctx, host),
            detail=f"{host}:{port} {status}",
        )
