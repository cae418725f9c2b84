"""
Two-phase instantiation of actions and delayed cost computation.

Planning binds requirements with the goal's common information only;
execution fills them from a concrete asset. Costs are always recomputed
from the current environment knowledge.
"""

from typing import List, Optional

from ..assets import UNKNOWN, Asset, EnvironmentKnowledge, trust_at
from ..exceptions import PlannerInvariantError
from ..goals import Goal
from .cost import ActionCost
from .spec import ActionSpec, EnvironmentCondition


def provides_match(spec: ActionSpec, template: Asset) -> bool:
    """An ActionSpec can complete assets like template: same kind, no conflicting concrete attributes."""
    provided = spec.provides
    if provided is None or provided.kind.name != template.kind.name:
        return False
    for attr in provided.kind.attributes:
        a, b = provided.attrs[attr], template.attrs[attr]
        if a is not UNKNOWN and b is not UNKNOWN and a != b:
            return False
    return True


def initialize_requirements(spec: ActionSpec, goal: Goal) -> List[Goal]:
    """
    Requirement goals partially instantiated with the goal's common
    (concrete, non-quantified) information; quantified attributes stay Unknown.
    """
    if spec.provides is None or spec.provides.kind.name != goal.template.kind.name:
        raise ValueError(f"action {spec.name} cannot satisfy a {goal.template.kind.name} goal")
    common = goal.common_attributes()
    requirements = []
    for requirement in spec.requirements:
        values = {
            req_attr: common[goal_attr]
            for req_attr, goal_attr in requirement.bindings.items()
            if goal_attr in common and requirement.template.attrs[req_attr] is UNKNOWN
        }
        template = requirement.template.with_attrs(**values) if values else requirement.template
        requirements.append(Goal(template=template, quantifiers=requirement.quantifiers))
    return requirements


def setup_requirements(spec: ActionSpec, concrete: Asset, requirements: List[Goal]) -> List[Goal]:
    """
    Fill each requirement with the now-concrete values it is bound to.

    Goals are immutable, so the filled goals are returned in order. A
    requirement already concrete with a different value is a planner bug.
    """
    filled = []
    for requirement, goal in zip(spec.requirements, requirements):
        values = {}
        for req_attr, goal_attr in requirement.bindings.items():
            value = concrete.attrs.get(goal_attr, UNKNOWN)
            if value is UNKNOWN:
                continue
            current = goal.template.attrs[req_attr]
            if current is not UNKNOWN and current != value:
                raise PlannerInvariantError(
                    f"{spec.name}: requirement attribute '{req_attr}' is {current}, concrete asset says {value}"
                )
            if req_attr in goal.quantified_attributes:
                continue
            values[req_attr] = value
        template = goal.template.with_attrs(**values) if values else goal.template
        filled.append(Goal(template=template, quantifiers=goal.quantifiers))
    return filled


def bind_condition(condition: EnvironmentCondition, concrete: Optional[Asset]) -> Asset:
    """Condition template with bound attributes copied from the concrete asset (unbound stay wildcards)."""
    if concrete is None or not condition.bindings:
        return condition.template
    values = {}
    for cond_attr, goal_attr in condition.bindings.items():
        value = concrete.attrs.get(goal_attr, UNKNOWN)
        if value is not UNKNOWN:
            values[cond_attr] = value
    return condition.template.with_attrs(**values) if values else condition.template


def condition_multiplier(condition: EnvironmentCondition, env: EnvironmentKnowledge, now: float,
                         concrete: Optional[Asset] = None) -> float:
    """
    Multiplier contributed by one condition. The best matching asset weighs
    met/unmet by its probability, and the whole effect by its decayed trust.
    1.0 when the environment is silent.
    """
    matches = env.query(bind_condition(condition, concrete), min_trust=0.0, now=now)
    if not matches:
        return 1.0
    best = matches[0]
    weight = trust_at(best, now, env.half_life)
    p = best.probability
    mixed = p * condition.met_multiplier + (1.0 - p) * condition.unmet_multiplier
    return weight * mixed + (1.0 - weight)


def effective_cost(spec: ActionSpec, env: EnvironmentKnowledge, now: float = 0.0,
                   concrete: Optional[Asset] = None) -> ActionCost:
    """Base cost with every condition applied against env; probability clamped to [0, 1]."""
    if not spec.conditions:
        return spec.base_cost
    probability = spec.base_cost.success_probability
    for condition in spec.conditions:
        probability *= condition_multiplier(condition, env, now, concrete)
    return spec.base_cost.with_probability(probability)


def fill_agent_attribute(spec: ActionSpec, template: Asset, host) -> Asset:
    if spec.agent_attribute is None or template.attrs[spec.agent_attribute] is not UNKNOWN:
        return template
    return template.with_attrs(**{spec.agent_attribute: host})

