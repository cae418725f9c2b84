from src.netattack.core.engine import AttackParameters, BudgetState, Verdict, enforce_budgets, get_profile


class TestEnforceBudgets:

    def test_within_budget(self):
        decision = enforce_budgets(BudgetState(started_at=0.0, clock=10.0), AttackParameters())
        assert not decision.halt
        assert decision.verdict is None

    def test_time_is_measured_from_start(self):
        params = AttackParameters(execution_time=100.0)
        assert not enforce_budgets(BudgetState(started_at=500.0, clock=590.0), params).halt
        decision = enforce_budgets(BudgetState(started_at=500.0, clock=601.0), params)
        assert decision.halt
        assert decision.verdict is Verdict.BUDGET_EXHAUSTED

    def test_noise_over_tolerance(self):
        params = AttackParameters(tolerated_noise={"network-ids": 5.0}, expected_success=0.7)
        state = BudgetState(started_at=0.0, clock=1.0, noise={"network-ids": 5.5, "host-log": 100.0})
        decision = enforce_budgets(state, params)
        assert decision.halt
        assert decision.verdict is Verdict.BUDGET_EXHAUSTED
        assert "network-ids" in decision.reason

    def test_must_succeed_ignores_noise(self):
        params = AttackParameters(tolerated_noise={"network-ids": 5.0}, expected_success=1.0)
        state = BudgetState(started_at=0.0, clock=1.0, noise={"network-ids": 50.0})
        assert not enforce_budgets(state, params).halt

    def test_detection_is_terminal_only_when_asked(self):
        state = BudgetState(started_at=0.0, clock=1.0, detections=[("nids", 0.5)])
        assert not enforce_budgets(state, get_profile("hacker").parameters).halt
        decision = enforce_budgets(state, get_profile("pentester").parameters)
        assert decision.halt
        assert decision.verdict is Verdict.DETECTED_BEFORE_SUCCESS
        assert "nids" in decision.reason
