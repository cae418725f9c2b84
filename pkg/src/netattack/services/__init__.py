"""Scenario-level services behind the command line: loading, sweeps and countermeasures."""

from .scenario_service import Measure, Scenario, build_network, load_scenario, validate_scenario
from .measures import MeasureSearchResult, apply_measures, exposure, minimal_measure_set
from .sweep import SweepResult, SweepRow, incremental_order, sweep_profiles

__all__ = [
    "Measure",
    "Scenario",
    "build_network",
    "load_scenario",
    "validate_scenario",
    "MeasureSearchResult",
    "apply_measures",
    "exposure",
    "minimal_measure_set",
    "SweepResult",
    "SweepRow",
    "incremental_order",
    "sweep_profiles",
]
