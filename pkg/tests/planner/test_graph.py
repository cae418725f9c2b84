import pytest

from src.netattack.core.actions import ActionSpec, RequirementTemplate
from src.netattack.core.assets import AGENT, IP_CONNECTIVITY, TCP_CONNECTIVITY, Asset
from src.netattack.core.exceptions import ConfigurationError, UnplannableError
from src.netattack.core.goals import Goal
from src.netattack.core.planner import build_graph

HOST = "10.0.2.10"


def relay_spec() -> ActionSpec:
    """Connectivity that needs an agent on the target: closes an agent -> tcp -> agent loop."""
    return ActionSpec(
        name="Relay",
        implementation="TCPConnect",
        provides=Asset.of(TCP_CONNECTIVITY),
        requirements=(RequirementTemplate(Asset.of(AGENT), bindings={"host": "target"}),),
    )


class TestGraphConstruction:

    def test_default_catalog_layers(self, catalog):
        graph = build_graph(Goal(Asset.of(AGENT, host=HOST)), list(catalog))

        assert [a.name for a in graph.root.children] == ["ApacheChunkedEncodingExploit", "WuFTPglobbingExploit"]
        apache = graph.root.children[0]
        [tcp] = apache.requirements
        assert tcp.goal.template["port"] == 80
        assert str(tcp.goal.template["target"]) == HOST
        assert [a.name for a in tcp.children] == ["TCPConnect", "TCPConnectCreatingHops"]

    def test_pivot_action_is_a_leaf(self, catalog):
        graph = build_graph(Goal(Asset.of(AGENT, host=HOST)), list(catalog))
        pivots = [a for a in graph.action_nodes() if a.pivot]
        assert pivots
        assert all(a.name == "TCPConnectCreatingHops" and a.requirements == [] for a in pivots)

    def test_candidate_actions_recorded_on_goal(self, catalog):
        goal = Goal(Asset.of(IP_CONNECTIVITY, target=HOST))
        build_graph(goal, list(catalog))
        assert goal.candidate_actions == ["NetworkDiscovery", "IPConnect"]

    def test_shared_requirements_are_one_node(self, catalog):
        graph = build_graph(Goal(Asset.of(AGENT, host=HOST)), list(catalog))
        ip_nodes = [n for n in graph.goal_nodes() if n.goal.template.kind is IP_CONNECTIVITY]
        assert len(ip_nodes) == 1
        # Both exploits' TCP requirements lead to the same IP connectivity node.
        connects = [a for a in graph.action_nodes() if a.name == "TCPConnect"]
        assert len(connects) == 2
        assert all(c.requirements[0] is ip_nodes[0] for c in connects)

    def test_cycle_is_cut(self, catalog):
        specs = [catalog.get("ApacheChunkedEncodingExploit"), relay_spec()]
        graph = build_graph(Goal(Asset.of(AGENT, host=HOST)), specs)

        [apache] = graph.root.children
        [tcp] = apache.requirements
        [relay] = tcp.children
        [agent_again] = relay.requirements
        assert agent_again.cut
        assert agent_again.ref is graph.root
        assert agent_again.children == []
        assert agent_again.to_dict()["cycle"] is True

    def test_depth_limit_truncates(self, catalog):
        graph = build_graph(Goal(Asset.of(AGENT, host=HOST)), list(catalog), depth_limit=1)
        [tcp] = graph.root.children[0].requirements
        assert tcp.truncated
        assert tcp.children == []
        assert graph.to_dict()["actions"][0]["requirements"][0]["truncated"] is True

    def test_depth_limit_must_be_positive(self, catalog):
        with pytest.raises(ConfigurationError):
            build_graph(Goal(Asset.of(AGENT, host=HOST)), list(catalog), depth_limit=0)

    def test_unplannable_goal(self, catalog):
        specs = [catalog.get("IPConnect")]
        with pytest.raises(UnplannableError):
            build_graph(Goal(Asset.of(AGENT, host=HOST)), specs)

    def test_terminates_on_every_depth(self, catalog):
        specs = list(catalog) + [relay_spec()]
        for depth in range(1, 10):
            graph = build_graph(Goal(Asset.of(AGENT, host=HOST)), specs, depth_limit=depth)
            assert graph.size() > 0
            for node in graph.goal_nodes():
                assert node.depth <= depth + 1
