"""
Network topology as the planner sees it: declared routing and firewall
layout, minus links the attacker has already observed to be closed.
"""

import ipaddress
from typing import List, Optional

import networkx as nx

from ..assets import IP_CONNECTIVITY, TCP_CONNECTIVITY, Asset, EnvironmentKnowledge
from ..netsim import SimNetwork


class TopologyView:
    def __init__(self, net: SimNetwork):
        self.net = net

    def hosts(self) -> List[ipaddress.IPv4Address]:
        return self.net.addresses()

    def link(self, source, target, port: Optional[int] = None, env: Optional[EnvironmentKnowledge] = None) -> bool:
        """Whether source may reach target (on port, if given)."""
        if env is not None and self._refuted(source, target, port, env):
            return False
        if port is None:
            return self.net.routable(source, target)
        permitted, _ = self.net.tcp_permitted(source, target, port)
        return permitted

    @staticmethod
    def _refuted(source, target, port, env: EnvironmentKnowledge) -> bool:
        probes = [Asset.of(IP_CONNECTIVITY, source=source, target=target)]
        if port is not None:
            probes.append(Asset.of(TCP_CONNECTIVITY, source=source, target=target, port=port))
        for probe in probes:
            known = env.find(probe)
            if known is not None and known.is_negative:
                return True
        return False

    def graph(self, port: Optional[int] = None, env: Optional[EnvironmentKnowledge] = None) -> nx.DiGraph:
        """Directed reachability graph over the declared hosts."""
        g = nx.DiGraph()
        hosts = self.hosts()
        g.add_nodes_from(hosts)
        for u in hosts:
            for v in hosts:
                if u != v and self.link(u, v, port, env):
                    g.add_edge(u, v)
        return g
