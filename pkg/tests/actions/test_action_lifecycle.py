import pytest

from src.netattack.core.actions import (
    ActionCost,
    ActionSpec,
    CleanupClass,
    EnvironmentCondition,
    NoiseEvent,
    RequirementTemplate,
    TimeTriple,
    VulnerabilityCategory,
    VulnerabilityInfo,
    condition_multiplier,
    effective_cost,
    fill_agent_attribute,
    initialize_requirements,
    provides_match,
    setup_requirements,
)
from src.netattack.core.assets import (
    AGENT,
    APPLICATION,
    TCP_CONNECTIVITY,
    UNKNOWN,
    Asset,
    EnvironmentKnowledge,
)
from src.netattack.core.exceptions import AssetSchemaError, PlannerInvariantError
from src.netattack.core.goals import Goal, Quantifier, QuantifierType, ValueListDomain

HOST = "10.0.2.10"


@pytest.fixture
def exploit_spec():
    return ActionSpec(
        name="ApacheChunkedEncodingExploit",
        implementation="Exploit",
        provides=Asset.of(AGENT),
        requirements=(
            RequirementTemplate(Asset.of(TCP_CONNECTIVITY, port=80), bindings={"target": "host"}),
        ),
        conditions=(
            EnvironmentCondition(
                Asset.of(APPLICATION, port=80, application="apache"),
                met_multiplier=1.0,
                unmet_multiplier=0.01,
                bindings={"host": "host"},
            ),
        ),
        base_cost=ActionCost(success_probability=0.8),
        vulnerability=VulnerabilityInfo(VulnerabilityCategory.SOFTWARE_IMPLEMENTATION_FLAW, "CVE-2002-0392"),
    )


class TestRequirements:

    def test_initialize_copies_common_information(self, exploit_spec):
        [requirement] = initialize_requirements(exploit_spec, Goal(Asset.of(AGENT, host=HOST)))
        assert str(requirement.template["target"]) == HOST
        assert requirement.template["port"] == 80
        assert requirement.template["source"] is UNKNOWN

    def test_initialize_leaves_quantified_attributes_unknown(self, exploit_spec):
        goal = Goal(Asset.of(AGENT),
                    (Quantifier(QuantifierType.ANY, "host", ValueListDomain([HOST, "10.0.2.11"])),))
        [requirement] = initialize_requirements(exploit_spec, goal)
        assert requirement.template["target"] is UNKNOWN

    def test_setup_fills_from_concrete_asset(self, exploit_spec):
        goal = Goal(Asset.of(AGENT),
                    (Quantifier(QuantifierType.ANY, "host", ValueListDomain([HOST, "10.0.2.11"])),))
        planned = initialize_requirements(exploit_spec, goal)
        [filled] = setup_requirements(exploit_spec, Asset.of(AGENT, host="10.0.2.11"), planned)
        assert str(filled.template["target"]) == "10.0.2.11"

    def test_setup_detects_conflicts(self, exploit_spec):
        planned = initialize_requirements(exploit_spec, Goal(Asset.of(AGENT, host=HOST)))
        with pytest.raises(PlannerInvariantError):
            setup_requirements(exploit_spec, Asset.of(AGENT, host="10.0.2.99"), planned)

    def test_wrong_goal_kind(self, exploit_spec):
        with pytest.raises(ValueError):
            initialize_requirements(exploit_spec, Goal(Asset.of(APPLICATION, host=HOST)))

    def test_provides_match(self, exploit_spec):
        assert provides_match(exploit_spec, Asset.of(AGENT, host=HOST))
        assert not provides_match(exploit_spec, Asset.of(APPLICATION, host=HOST))

    def test_fill_agent_attribute_only_when_unknown(self):
        spec = ActionSpec(name="TCPConnect", implementation="TCPConnect",
                          provides=Asset.of(TCP_CONNECTIVITY), agent_attribute="source")
        template = Asset.of(TCP_CONNECTIVITY, target=HOST, port=80)
        assert str(fill_agent_attribute(spec, template, "10.0.1.10")["source"]) == "10.0.1.10"
        pinned = template.with_attrs(source="10.0.3.10")
        assert str(fill_agent_attribute(spec, pinned, "10.0.1.10")["source"]) == "10.0.3.10"


class TestConditions:

    def test_silent_environment_leaves_base_cost(self, exploit_spec):
        env = EnvironmentKnowledge("localAgent")
        cost = effective_cost(exploit_spec, env, concrete=Asset.of(AGENT, host=HOST))
        assert cost.success_probability == pytest.approx(0.8)

    def test_negative_evidence_applies_unmet_multiplier(self, exploit_spec):
        env = EnvironmentKnowledge("localAgent")
        env.insert(Asset.of(APPLICATION, probability=0.0, host=HOST, port=80, application="apache"))
        cost = effective_cost(exploit_spec, env, concrete=Asset.of(AGENT, host=HOST))
        assert cost.success_probability == pytest.approx(0.008)

    def test_bindings_follow_the_target(self, exploit_spec):
        env = EnvironmentKnowledge("localAgent")
        env.insert(Asset.of(APPLICATION, probability=0.0, host=HOST, port=80, application="apache"))
        other = effective_cost(exploit_spec, env, concrete=Asset.of(AGENT, host="10.0.2.11"))
        assert other.success_probability == pytest.approx(0.8)

    def test_probability_and_trust_weight_the_effect(self, exploit_spec):
        env = EnvironmentKnowledge("localAgent", half_life=100.0)
        env.insert(Asset.of(APPLICATION, probability=0.5, trust=0.5, host=HOST, port=80, application="apache"))
        [condition] = exploit_spec.conditions
        multiplier = condition_multiplier(condition, env, now=0.0, concrete=Asset.of(AGENT, host=HOST))
        mixed = 0.5 * 1.0 + 0.5 * 0.01
        assert multiplier == pytest.approx(0.5 * mixed + 0.5)

    def test_probability_is_clamped(self):
        spec = ActionSpec(
            name="Boosted",
            implementation="Exploit",
            provides=Asset.of(AGENT),
            conditions=(EnvironmentCondition(Asset.of(APPLICATION, application="apache"), met_multiplier=3.0),),
            base_cost=ActionCost(success_probability=0.9),
        )
        env = EnvironmentKnowledge("localAgent")
        env.insert(Asset.of(APPLICATION, host=HOST, port=80, application="apache"))
        assert effective_cost(spec, env).success_probability == 1.0


class TestCostValidation:

    def test_time_triple_order(self):
        with pytest.raises(AssetSchemaError):
            TimeTriple(5.0, 1.0, 10.0)

    def test_noise_magnitude_non_negative(self):
        with pytest.raises(AssetSchemaError):
            NoiseEvent("network-ids", -1.0)

    def test_cost_bounds(self):
        with pytest.raises(AssetSchemaError):
            ActionCost(success_probability=1.2)
        with pytest.raises(AssetSchemaError):
            ActionCost(hops_added=-1)

    def test_noise_by_category(self):
        cost = ActionCost(noise=(
            NoiseEvent("network-ids", 1.0),
            NoiseEvent("host-log", 2.0, CleanupClass.CLEANABLE_ON_SUCCESS),
            NoiseEvent("network-ids", 0.5),
        ))
        assert cost.noise_by_category() == {"network-ids": 1.5, "host-log": 2.0}

    def test_subtype_only_for_implementation_flaws(self):
        with pytest.raises(AssetSchemaError):
            VulnerabilityInfo.from_dict({"category": "TrustRelationship", "subtype": "bufferOverflow"})

    def test_skill_range(self):
        with pytest.raises(AssetSchemaError):
            ActionSpec(name="x", implementation="Exploit", skill=6)

    def test_agent_attribute_must_be_provided(self):
        with pytest.raises(AssetSchemaError):
            ActionSpec(name="x", implementation="IPConnect", provides=Asset.of(AGENT), agent_attribute="source")

    def test_spec_record_round_trip(self, exploit_spec):
        assert ActionSpec.from_dict(exploit_spec.to_dict()).to_dict() == exploit_spec.to_dict()
