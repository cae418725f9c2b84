"""
Countermeasure evaluation: deploying measures on a scenario and searching for
the smallest set that makes it safe.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import config.settings as settings

from ..core.catalog import Catalog
from ..core.exceptions import ConfigurationError
from ..core.factories.logger_factory import LoggerFactory
from .scenario_service import Measure, Scenario

logger = LoggerFactory.get_logger("netattack.measures")

SafetyPredicate = Callable[[Scenario], bool]


def _weaken(record: Dict[str, Any], measure: Measure) -> Dict[str, Any]:
    cost = dict(record.get("cost") or {})
    cost["successProbability"] = float(cost.get("successProbability", 1.0)) * measure.success_multiplier
    cost["noise"] = [
        {**event, "magnitude": float(event.get("magnitude", 0.0)) * measure.noise_multiplier}
        for event in cost.get("noise", [])
    ]
    return {**record, "cost": cost}


def apply_measures(scenario: Scenario, ids: Iterable[str]) -> Scenario:
    """
    Derive the scenario with the given measures deployed.

    Measures already deployed are skipped, so applying one twice is a no-op.
    Raises KeyError for an unknown measure id.
    """
    pending = sorted(set(ids) - scenario.applied_measures)
    measures = [scenario.measure(i) for i in pending]
    if not measures:
        return scenario

    records = scenario.catalog.records()
    for measure in measures:
        records = [_weaken(r, measure) if r["name"] in measure.target_actions else r for r in records]
    network = scenario.network.clone()
    for measure in measures:
        if measure.added_sensor is not None:
            network.add_sensor(measure.added_sensor.reset())
    logger.debug(f"Deployed measures {pending} on '{scenario.name}'")
    return replace(
        scenario,
        catalog=Catalog(records),
        network=network,
        applied_measures=scenario.applied_measures | frozenset(pending),
    )


def exposure(scenario: Scenario, seeds: Sequence[int], profiles: Optional[Sequence[str]] = None) -> int:
    """Number of (profile, seed) runs ending in undetected success."""
    names = list(profiles) if profiles is not None else [p.name for p in scenario.profiles]
    return sum(1 for name in names for seed in seeds if scenario.run(name, seed).undetected_success)


@dataclass(frozen=True)
class MeasureSearchResult:
    measures: Tuple[str, ...]
    safe: bool
    mode: str  # "exhaustive" or "greedy"
    evaluated: int
    # Undetected-success runs left with the returned set (0 when safe).
    exposure: int = 0

    @property
    def unsatisfiable(self) -> bool:
        return not self.safe

    def to_dict(self) -> Dict[str, Any]:
        return {
            "measures": list(self.measures),
            "safe": self.safe,
            "unsatisfiable": self.unsatisfiable,
            "mode": self.mode,
            "evaluated": self.evaluated,
            "exposure": self.exposure,
        }

    def to_text(self) -> str:
        chosen = ", ".join(self.measures) if self.measures else "(none)"
        status = "safe" if self.safe else f"UNSATISFIABLE, best found leaves {self.exposure} undetected success(es)"
        return f"Measures: {chosen}\nStatus: {status}\nSearch: {self.mode}, {self.evaluated} set(s) evaluated"


class _Evaluator:
    """Scores measure sets; lower exposure is better and 0 means safe."""

    def __init__(self, scenario: Scenario, seeds: Sequence[int], safety: Optional[SafetyPredicate],
                 profiles: Optional[Sequence[str]]):
        self.scenario = scenario
        self.seeds = list(seeds)
        self.safety = safety
        self.profiles = profiles

    def __call__(self, subset: Tuple[str, ...]) -> int:
        derived = apply_measures(self.scenario, subset)
        if self.safety is not None:
            return 0 if self.safety(derived) else 1
        return exposure(derived, self.seeds, self.profiles)


def minimal_measure_set(
    scenario: Scenario,
    safety: Optional[SafetyPredicate] = None,
    max_size: Optional[int] = None,
    seeds: Optional[Sequence[int]] = None,
    profiles: Optional[Sequence[str]] = None,
    workers: int = settings.SWEEP_WORKERS,
    exhaustive_limit: int = settings.EXHAUSTIVE_MEASURE_LIMIT,
) -> MeasureSearchResult:
    """
    Smallest set of measures rendering the scenario safe.

    Safe means no profile reaches its objective undetected for any seed. Up
    to exhaustive_limit measures every subset is tried by increasing size,
    ties resolved by the lexicographically first id tuple. Beyond that a
    greedy pass strips measures from the full set while it stays safe, which
    gives a non-reducible set rather than a minimum one.

    Args:
        scenario: Scenario whose measures are candidates.
        safety: Custom predicate on a derived scenario; replaces the seed sweep.
        max_size: Largest subset size tried in exhaustive mode.
        seeds: Seeds each profile runs with (default 0..SAFETY_SEEDS-1).
        profiles: Profile names to check (default every scenario profile).
        workers: Thread pool size for subset evaluations.
    """
    ids = sorted(m.id for m in scenario.measures)
    seeds = list(seeds) if seeds is not None else list(range(settings.SAFETY_SEEDS))
    max_size = len(ids) if max_size is None else max_size
    if max_size < 0:
        raise ConfigurationError(f"max subset size must be non-negative, got {max_size}")
    if workers < 1:
        raise ConfigurationError(f"workers must be at least 1, got {workers}")
    evaluate = _Evaluator(scenario, seeds, safety, profiles)

    if len(ids) > exhaustive_limit:
        return _greedy(ids, evaluate)

    best: Optional[Tuple[int, int, Tuple[str, ...]]] = None
    evaluated = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for size in range(0, min(max_size, len(ids)) + 1):
            subsets: List[Tuple[str, ...]] = list(itertools.combinations(ids, size))
            scores = list(pool.map(evaluate, subsets))
            evaluated += len(subsets)
            for subset, score in zip(subsets, scores):
                if score == 0:
                    logger.info(f"🛡️ Minimal safe measure set: {list(subset) or '(none)'}")
                    return MeasureSearchResult(subset, True, "exhaustive", evaluated)
                candidate = (score, len(subset), subset)
                if best is None or candidate < best:
                    best = candidate
    score, _, subset = best if best is not None else (0, 0, ())
    logger.warning(f"No safe measure set of size <= {max_size}; best leaves {score} exposure")
    return MeasureSearchResult(subset, False, "exhaustive", evaluated, score)


def _greedy(ids: List[str], evaluate: _Evaluator) -> MeasureSearchResult:
    current = tuple(ids)
    score = evaluate(current)
    evaluated = 1
    if score > 0:
        logger.warning(f"Even all {len(ids)} measures leave {score} exposure")
        return MeasureSearchResult(current, False, "greedy", evaluated, score)
    for measure_id in ids:
        trial = tuple(i for i in current if i != measure_id)
        evaluated += 1
        if evaluate(trial) == 0:
            current = trial
    logger.info(f"🛡️ Non-reducible safe measure set: {list(current) or '(none)'}")
    return MeasureSearchResult(current, True, "greedy", evaluated)
