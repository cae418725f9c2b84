import ipaddress
import itertools

import numpy as np
import pytest

from src.netattack.core.assets import AGENT, BANNER, IP_CONNECTIVITY, TCP_CONNECTIVITY, Asset, EnvironmentKnowledge
from src.netattack.core.engine import get_profile
from src.netattack.core.exceptions import UnplannableError
from src.netattack.core.goals import Goal
from src.netattack.core.netsim import FirewallRule, Service, SimHost, SimNetwork, Verdict
from src.netattack.core.planner import Planner, TopologyView, hypothetical_env, scalarize

A = ipaddress.IPv4Address("10.0.1.10")
B = ipaddress.IPv4Address("10.0.2.10")
C = ipaddress.IPv4Address("10.0.3.10")


def subnet(i: int) -> ipaddress.IPv4Network:
    return ipaddress.IPv4Network(f"10.0.{i}.0/24")


def env_with_agent(host) -> EnvironmentKnowledge:
    env = EnvironmentKnowledge("localAgent")
    env.insert(Asset.of(AGENT, agent="localAgent", host=host))
    return env


@pytest.fixture
def params():
    return get_profile("hacker").parameters


@pytest.fixture
def three_hosts():
    return SimNetwork(
        hosts=[
            SimHost(A),
            SimHost(B, ports={80: Service(application="apache", vulnerabilities=frozenset({"CVE-2002-0392"}))}),
            SimHost(C, ports={21: Service(application="wu-ftpd")}),
        ],
        subnets=[subnet(1), subnet(2), subnet(3)],
        rules=[
            FirewallRule(subnet(1), subnet(2), Verdict.ALLOW),
            FirewallRule(subnet(2), subnet(3), Verdict.ALLOW),
        ],
    )


def random_network(rng: np.random.Generator) -> SimNetwork:
    n = int(rng.integers(3, 7))
    hosts = [SimHost(ipaddress.IPv4Address(f"10.0.{i}.10")) for i in range(1, n + 1)]
    ports = [None, 80, 21]
    rules = [
        FirewallRule(subnet(i), subnet(j), Verdict.ALLOW, port=ports[int(rng.integers(3))])
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j and rng.random() < 0.4
    ]
    return SimNetwork(hosts=hosts, subnets=[subnet(i) for i in range(1, n + 1)], rules=rules)


def first_usable(planner: Planner, template: Asset, hyp: EnvironmentKnowledge, keep=lambda spec: True):
    try:
        graph = planner.build(Goal(template))
    except UnplannableError:
        return None
    for candidate in planner.rank_candidates(graph.root, hyp, exclude_high_level=True):
        if keep(candidate.spec) and not candidate.infeasible and candidate.cost.success_probability > 0:
            return candidate
    return None


def hop_weight(specs, params, net: SimNetwork, env, u, v, target, port):
    """Scalar cost of one pivot hop, ranked by a planner that has never seen the network."""
    fresh = Planner(specs, params)
    hyp = hypothetical_env(env, u, v, now=0.0)
    if v == target:
        if not net.tcp_permitted(u, v, port)[0]:
            return None
        best = first_usable(fresh, Asset.of(TCP_CONNECTIVITY, source=u, target=v, port=port), hyp)
        return None if best is None else scalarize(best.cost, params)

    def exploitable(spec):
        return spec.is_exploit and spec.port is not None and net.tcp_permitted(u, v, spec.port)[0]

    best = first_usable(fresh, Asset.of(AGENT, host=v), hyp, exploitable)
    return None if best is None else scalarize(best.cost.with_hops(1), params)


def cheapest_route(specs, params, net: SimNetwork, env, source, target, port):
    """Minimum summed hop weight over every simple host sequence from source to target."""
    others = [h for h in net.addresses() if h not in (source, target)]
    weights = {}
    best = None
    for length in range(len(others) + 1):
        for middle in itertools.permutations(others, length):
            route = [source, *middle, target]
            total = 0.0
            for u, v in zip(route, route[1:]):
                if (u, v) not in weights:
                    weights[u, v] = hop_weight(specs, params, net, env, u, v, target, port)
                if weights[u, v] is None:
                    break
                total += weights[u, v]
            else:
                best = total if best is None else min(best, total)
    return best


class TestPivotPlanning:

    def test_three_host_chain(self, catalog, params, three_hosts):
        planner = Planner(list(catalog), params, TopologyView(three_hosts))

        plan = planner.plan_pivot(C, 21, env_with_agent(A))

        assert [h.host for h in plan.hops] == [A, B, C]
        assert plan.source == A
        assert [h.host for h in plan.intermediates] == [B]
        assert plan.total_cost.hops == 1
        assert plan.hops[1].subplan.spec.is_exploit
        assert plan.hops[2].subplan.name == "TCPConnect"
        assert 0.0 < plan.total_cost.success_probability < 1.0

    def test_no_agent_to_start_from(self, catalog, params, three_hosts):
        planner = Planner(list(catalog), params, TopologyView(three_hosts))
        with pytest.raises(UnplannableError):
            planner.plan_pivot(C, 21, EnvironmentKnowledge("localAgent"))

    def test_needs_topology(self, catalog, params):
        with pytest.raises(UnplannableError):
            Planner(list(catalog), params).plan_pivot(C, 21, env_with_agent(A))

    def test_refuted_link_is_removed(self, catalog, params, three_hosts):
        env = env_with_agent(A)
        env.insert(Asset.of(IP_CONNECTIVITY, probability=0.0, source=A, target=B))
        planner = Planner(list(catalog), params, TopologyView(three_hosts))

        with pytest.raises(UnplannableError):
            planner.plan_pivot(C, 21, env)

    def test_held_hosts_are_sources(self, catalog, params, three_hosts):
        env = env_with_agent(A)
        env.insert(Asset.of(AGENT, agent=f"agent@{B}", host=B))
        planner = Planner(list(catalog), params, TopologyView(three_hosts))

        plan = planner.plan_pivot(C, 21, env)

        assert [h.host for h in plan.hops] == [B, C]
        assert plan.total_cost.hops == 0

    def test_matches_independent_route_search(self, catalog, params):
        rng = np.random.default_rng(2024)
        specs = list(catalog)
        for _ in range(60):
            net = random_network(rng)
            addresses = net.addresses()
            source, target = addresses[0], addresses[-1]
            port = [80, 21][int(rng.integers(2))]
            env = env_with_agent(source)

            expected = cheapest_route(specs, params, net, env, source, target, port)
            planner = Planner(specs, params, TopologyView(net))

            if expected is None:
                with pytest.raises(UnplannableError):
                    planner.plan_pivot(target, port, env)
                continue

            plan = planner.plan_pivot(target, port, env)
            hosts = [h.host for h in plan.hops]
            assert plan.weight == pytest.approx(expected, abs=1e-9)
            assert hosts[0] == source and hosts[-1] == target
            assert len(set(hosts)) == len(hosts)
            assert plan.total_cost.hops == len(hosts) - 2


class TestTopology:

    def test_link_follows_firewall(self, three_hosts):
        view = TopologyView(three_hosts)
        assert view.link(A, B)
        assert not view.link(A, C)
        assert view.link(B, C, 21)

    def test_negative_tcp_evidence_refutes_port(self, three_hosts):
        view = TopologyView(three_hosts)
        env = EnvironmentKnowledge("localAgent")
        env.insert(Asset.of(TCP_CONNECTIVITY, probability=0.0, source=B, target=C, port=21))
        assert not view.link(B, C, 21, env)
        assert view.link(B, C, 80, env)

    def test_graph(self, three_hosts):
        g = TopologyView(three_hosts).graph()
        assert set(g.edges) == {(A, B), (B, C)}


class TestHypotheticalEnvironment:

    def test_keeps_only_assets_about_the_pair(self):
        env = EnvironmentKnowledge("localAgent")
        env.insert(Asset.of(BANNER, banner="Apache", host=B, port=80))
        env.insert(Asset.of(BANNER, banner="wu-ftpd", host=C, port=21))
        env.insert(Asset.of(IP_CONNECTIVITY, source=A, target=B))

        hyp = hypothetical_env(env, A, B, now=5.0)

        banners = hyp.query(Asset.of(BANNER), min_trust=0.0, now=5.0)
        assert [str(a["host"]) for a in banners] == [str(B)]
        assert hyp.find(Asset.of(IP_CONNECTIVITY, source=A, target=B)) is not None
        [imaginary] = hyp.agents()
        assert imaginary["host"] == A
        assert imaginary.created_at == 5.0

    def test_source_environment_untouched(self):
        env = EnvironmentKnowledge("localAgent")
        hypothetical_env(env, A, B, now=0.0)
        assert env.agents() == []
