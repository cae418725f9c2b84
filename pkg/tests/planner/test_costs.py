import math

import numpy as np
import pytest

from src.netattack.core.actions import ActionCost, NoiseEvent, TimeTriple
from src.netattack.core.engine import AttackParameters
from src.netattack.core.exceptions import ConfigurationError
from src.netattack.core.planner import (
    IDENTITY,
    PathCost,
    evaluate_path,
    is_feasible,
    rank_costs,
    rank_key,
    scalarize,
    violations,
    weights_for,
)

CATEGORIES = ["network-ids", "host-log"]


def random_cost(rng: np.random.Generator) -> ActionCost:
    low, mid, high = sorted(float(x) for x in rng.uniform(0, 60, size=3))
    noise = tuple(
        NoiseEvent(CATEGORIES[int(rng.integers(2))], float(rng.uniform(0, 4)))
        for _ in range(int(rng.integers(0, 3)))
    )
    return ActionCost(
        success_probability=float(rng.uniform(0, 1)),
        time=TimeTriple(low, mid, high),
        noise=noise,
        stealthiness=float(rng.uniform(0, 1)),
        zero_day=bool(rng.random() < 0.1),
        hops_added=int(rng.integers(0, 3)),
    )


class TestPathAlgebra:

    def test_empty_path_is_identity(self):
        assert evaluate_path([]) == IDENTITY
        assert IDENTITY.success_probability == 1.0
        assert IDENTITY.hops == 0

    def test_random_sequences_fold_componentwise(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            costs = [random_cost(rng) for _ in range(int(rng.integers(1, 7)))]
            path = evaluate_path(costs)

            assert path.success_probability == pytest.approx(math.prod(c.success_probability for c in costs))
            assert path.stealthiness == pytest.approx(math.prod(c.stealthiness for c in costs))
            assert path.time.min == pytest.approx(sum(c.time.min for c in costs))
            assert path.time.avg == pytest.approx(sum(c.time.avg for c in costs))
            assert path.time.max == pytest.approx(sum(c.time.max for c in costs))
            assert path.hops == sum(c.hops_added for c in costs)
            assert path.uses_zero_day == any(c.zero_day for c in costs)
            for category in CATEGORIES:
                expected = sum(c.noise_by_category().get(category, 0.0) for c in costs)
                assert path.noise.get(category, 0.0) == pytest.approx(expected)

    def test_subpaths_fold_like_their_actions(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            costs = [random_cost(rng) for _ in range(6)]
            split = int(rng.integers(0, 7))
            whole = evaluate_path(costs)
            parts = evaluate_path([evaluate_path(costs[:split]), evaluate_path(costs[split:])])
            assert parts.success_probability == pytest.approx(whole.success_probability)
            assert parts.time.avg == pytest.approx(whole.time.avg)
            assert parts.hops == whole.hops

    def test_from_action_carries_hops(self):
        cost = ActionCost(hops_added=1, zero_day=True)
        assert PathCost.from_action(cost).hops == 1
        assert PathCost.from_action(cost).uses_zero_day


class TestScalarization:

    def test_weights_follow_parameters(self):
        cautious = AttackParameters(expected_success=0.9, non_traceability=1.0)
        careless = AttackParameters(expected_success=0.1, non_traceability=0.0)
        assert weights_for(cautious).failure > weights_for(careless).failure
        assert weights_for(cautious).hops > weights_for(careless).hops

    def test_no_noise_tolerance_makes_stealth_free(self):
        assert weights_for(AttackParameters(tolerated_noise={})).stealth == 0.0
        quiet = weights_for(AttackParameters(tolerated_noise={"network-ids": 1.0}))
        loud = weights_for(AttackParameters(tolerated_noise={"network-ids": 100.0}))
        assert quiet.stealth > loud.stealth > 0.0

    def test_scalar_is_non_negative_and_monotone_in_failure(self):
        params = AttackParameters()
        likely = PathCost(success_probability=0.9)
        unlikely = PathCost(success_probability=0.1)
        assert scalarize(IDENTITY, params) == 0.0
        assert scalarize(likely, params) < scalarize(unlikely, params)

    def test_execution_time_must_be_positive(self):
        params = type("Params", (), {"execution_time": 0.0})()
        with pytest.raises(ConfigurationError):
            scalarize(IDENTITY, params)


class TestFeasibility:

    def test_zero_day_needs_permission(self):
        cost = PathCost(uses_zero_day=True)
        assert violations(cost, AttackParameters()) == ["zero-day"]
        assert is_feasible(cost, AttackParameters(zero_dayness=True))

    def test_noise_tolerance_per_category(self):
        params = AttackParameters(tolerated_noise={"network-ids": 5.0}, expected_success=0.8)
        assert is_feasible(PathCost(noise={"network-ids": 5.0, "host-log": 50.0}), params)
        assert violations(PathCost(noise={"network-ids": 5.5}), params) == ["noise:network-ids"]

    def test_certain_success_ignores_noise(self):
        params = AttackParameters(tolerated_noise={"network-ids": 1.0}, expected_success=1.0)
        assert is_feasible(PathCost(noise={"network-ids": 10.0}), params)

    def test_time_budget(self):
        params = AttackParameters(execution_time=10.0)
        assert violations(PathCost(time=TimeTriple(1.0, 11.0, 20.0)), params) == ["time"]


class TestRanking:

    def test_infeasible_ranks_last(self):
        params = AttackParameters()
        cheap_but_forbidden = PathCost(uses_zero_day=True)
        expensive = PathCost(success_probability=0.01)
        assert rank_costs(expensive, cheap_but_forbidden, params) == -1

    def test_declaration_order_breaks_ties(self):
        params = AttackParameters()
        assert rank_costs(IDENTITY, IDENTITY, params, 3, 1) == 1
        assert rank_costs(IDENTITY, IDENTITY, params, 2, 2) == 0

    def test_rank_key_is_total(self):
        rng = np.random.default_rng(3)
        params = AttackParameters(tolerated_noise={"network-ids": 4.0})
        paths = [evaluate_path([random_cost(rng)]) for _ in range(50)]
        keys = [rank_key(p, params, i) for i, p in enumerate(paths)]
        assert len(set(keys)) == len(keys)
        ordered = sorted(range(len(paths)), key=lambda i: keys[i])
        for a, b in zip(ordered, ordered[1:]):
            assert rank_costs(paths[a], paths[b], params, a, b) == -1
