"""
Remote exploits against simulated services.

One class serves every catalog exploit (ApacheChunkedEncodingExploit,
WuFTPglobbingExploit, ...); port, application and granted capabilities come
from the action's catalog options and the vulnerability identifier from its record.
"""

from ..assets import AGENT, APPLICATION, Asset
from ..factories.action_factory import ActionFactory
from .base import ActionContext, ActionOutcome, BaseAction

# Residual doubt when the application answers but is not vulnerable: versions may be disguised.
PATCHED_APPLICATION_PROBABILITY = 0.1


def agent_id_for(host) -> str:
    return f"agent@{host}"


@ActionFactory.register("Exploit")
class Exploit(BaseAction):
    def run(self, ctx: ActionContext, concrete: Asset) -> ActionOutcome:
        target = concrete["host"]
        port = self.spec.port
        application = self.spec.options.get("application", "")
        sim_host = ctx.net.host(target)
        noise = self.noise_at(ctx, target)
        if sim_host is None or port is None:
            return ActionOutcome(success=False, noise=noise, detail="no such service")

        permitted, is_open = ctx.net.tcp_permitted(ctx.agent.host, target, port)
        if not (permitted and is_open):
            return ActionOutcome(success=False, noise=noise, detail=f"{target}:{port} not reachable")

        draw = float(ctx.rng.random())
        service = sim_host.service(port)
        present = service is not None and service.application == application
        vulnerable = present and self.spec.vulnerability.identifier in service.vulnerabilities

        if vulnerable and draw < ctx.cost.success_probability:
            agent = Asset.of(
                AGENT,
                created_at=ctx.now,
                agent=agent_id_for(target),
                capabilities=list(self.spec.options.get("capabilities", [])),
                host=target,
            )
            return ActionOutcome(success=True, produced=[agent], noise=noise, detail="compromised")

        produced = []
        if not present:
            produced.append(Asset.of(APPLICATION, probability=0.0, created_at=ctx.now,
                                     host=target, port=port, application=application))
            detail = f"{application} not running on {target}:{port}"
        elif not vulnerable:
            produced.append(Asset.of(APPLICATION, probability=PATCHED_APPLICATION_PROBABILITY, created_at=ctx.now,
                                     host=target, port=port, application=application))
            detail = f"{application} on {target}:{port} looks patched"
        else:
            detail = "exploit did not fire"
        return ActionOutcome(success=False, produced=produced, noise=noise, detail=detail)
