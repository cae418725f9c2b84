"""
Maintenance actions that complete no asset.
"""

from ..assets import UNKNOWN, Asset
from ..factories.action_factory import ActionFactory
from .base import ActionContext, ActionOutcome, BaseAction


def host_of(asset: Asset):
    for attr in ("host", "target"):
        if attr in asset.kind.attributes and asset.attrs[attr] is not UNKNOWN:
            return asset.attrs[attr]
    return None


@ActionFactory.register("CleanLogs")
class CleanLogs(BaseAction):
    """Scrub CleanableOnSuccess residue left on a host by earlier actions."""

    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        host = host_of(concrete)
        if host is None:
            return ActionOutcome(success=False, detail="no host to clean")
        removed = ctx.net.clean_residue(host)
        return ActionOutcome(success=removed > 0, noise=self.noise_at(ctx, host),
                             detail=f"removed {removed:g} noise on {host}")
