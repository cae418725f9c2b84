"""
Service and operating system identification: BannerGrabber, OSDetectByBanner, OSFingerprint.
"""

from typing import Dict, List, Mapping, Optional, Tuple

from ..assets import BANNER, OPERATING_SYSTEM, PORT, TCP_CONNECTIVITY, UNKNOWN, Asset, Symbol
from ..factories.action_factory import ActionFactory
from .base import ActionContext, ActionOutcome, BaseAction
from .discovery import negative_ip_connectivity


@ActionFactory.register("BannerGrabber")
class BannerGrabber(BaseAction):
    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        host, port = concrete["host"], concrete["port"]
        if port is UNKNOWN:
            return ActionOutcome(success=False, detail="no port to connect to")
        source = ctx.agent.host
        permitted, is_open = ctx.net.tcp_permitted(source, host, port)
        noise = self.noise_at(ctx, host)
        if not permitted:
            refused = Asset.of(TCP_CONNECTIVITY, probability=0.0, created_at=ctx.now,
                               source=source, target=host, port=port)
            return ActionOutcome(success=False, produced=[refused], noise=noise, detail="filtered")
        if not is_open:
            closed = Asset.of(PORT, probability=0.0, created_at=ctx.now, host=host, port=port, status="open")
            return ActionOutcome(success=False, produced=[closed], noise=noise, detail="closed port")
        service = ctx.net.host(host).service(port)
        banner = Asset.of(BANNER, created_at=ctx.now, banner=service.banner, host=host, port=port)
        return ActionOutcome(success=bool(self.completes_goal([banner], concrete)), produced=[banner], noise=noise)


def match_fingerprint(fingerprints: Mapping[str, Mapping[str, float]], banner: str) -> Optional[Dict[str, float]]:
    """Exact banner match first, then the longest table key the banner starts with."""
    if banner in fingerprints:
        return dict(fingerprints[banner])
    prefixes = [key for key in fingerprints if key and banner.startswith(key)]
    if not prefixes:
        return None
    return dict(fingerprints[max(prefixes, key=len)])


def distribution_assets(ctx: ActionContext, host, distribution: Mapping[str, float]) -> List[Asset]:
    total = sum(distribution.values())
    scale = 1.0 / total if total > 1.0 else 1.0
    ranked: List[Tuple[str, float]] = sorted(distribution.items(), key=lambda kv: (-kv[1], kv[0]))
    return [
        Asset.of(OPERATING_SYSTEM, probability=min(1.0, p * scale), created_at=ctx.now, os=Symbol(name), host=host)
        for name, p in ranked
        if p > 0
    ]


@ActionFactory.register("OSDetectByBanner")
class OSDetectByBanner(BaseAction):
    """Map banners already known for the host through the fingerprint table."""

    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        host = concrete["host"]
        banners = [b for b in ctx.env.query(Asset.of(BANNER, host=host)) if b.probability > 0]
        for banner in banners:
            distribution = match_fingerprint(ctx.fingerprints, banner["banner"] or "")
            if distribution:
                produced = distribution_assets(ctx, host, distribution)
                return ActionOutcome(success=bool(self.completes_goal(produced, concrete)), produced=produced,
                                     noise=self.noise_at(ctx, host), detail=f"matched banner {banner['banner']!r}")
        return ActionOutcome(success=False, noise=self.noise_at(ctx, host), detail="no matching fingerprint")


@ActionFactory.register("OSFingerprint")
class OSFingerprint(BaseAction):
    """Active stack fingerprinting: reads ground truth with configurable accuracy."""

    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        host = concrete["host"]
        source = ctx.agent.host
        sim_host = ctx.net.host(host)
        if sim_host is None or not ctx.net.routable(source, host):
            return ActionOutcome(success=False, produced=[negative_ip_connectivity(ctx, source, host)],
                                 detail=f"{host} unroutable from {source}")
        accuracy = float(self.spec.options.get("accuracy", 1.0))
        truth = sim_host.os_name
        distribution = {truth: 1.0}
        decoys = [d for d in self.spec.options.get("decoys", []) if d != truth]
        if accuracy < 1.0 and decoys:
            decoy = decoys[int(ctx.rng.integers(len(decoys)))]
            distribution = {truth: accuracy, decoy: 1.0 - accuracy}
        produced = distribution_assets(ctx, host, distribution)
        return ActionOutcome(success=bool(self.completes_goal(produced, concrete)), produced=produced,
                             noise=self.noise_at(ctx, host))
