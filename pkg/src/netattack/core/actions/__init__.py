"""Action framework: specs, requirement templates, environment conditions and costs."""

from .cost import ZERO_COST, ZERO_TIME, ActionCost, CleanupClass, NoiseEvent, TimeTriple
from .spec import (
    ActionSpec,
    EnvironmentCondition,
    ImplementationFlaw,
    RequirementTemplate,
    VulnerabilityCategory,
    VulnerabilityInfo,
)
from .lifecycle import (
    bind_condition,
    condition_multiplier,
    effective_cost,
    fill_agent_attribute,
    initialize_requirements,
    provides_match,
    setup_requirements,
)

__all__ = [
    "ZERO_COST",
    "ZERO_TIME",
    "ActionCost",
    "CleanupClass",
    "NoiseEvent",
    "TimeTriple",
    "ActionSpec",
    "EnvironmentCondition",
    "ImplementationFlaw",
    "RequirementTemplate",
    "VulnerabilityCategory",
    "VulnerabilityInfo",
    "bind_condition",
    "condition_multiplier",
    "effective_cost",
    "fill_agent_attribute",
    "initialize_requirements",
    "provides_match",
    "setup_requirements",
]
