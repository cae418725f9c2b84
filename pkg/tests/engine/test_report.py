import json

from src.netattack.core.engine import AttackReport, Verdict


def report(**kwargs) -> AttackReport:
    return AttackReport(profile="hacker", seed=0, objective={"kind": "agent"}, **kwargs)


class TestDetectionOrdering:

    def test_no_detections(self):
        r = report(objective_achieved=True, success_time=10.0)
        assert not r.detected_before_success
        assert r.undetected_success

    def test_detected_after_success(self):
        r = report(objective_achieved=True, success_time=10.0, detections=[("nids", 12.0)])
        assert not r.detected_before_success
        assert r.undetected_success

    def test_detected_at_success_counts(self):
        r = report(objective_achieved=True, success_time=10.0, detections=[("nids", 10.0)])
        assert r.detected_before_success
        assert not r.undetected_success

    def test_detected_without_success(self):
        r = report(detections=[("nids", 3.0)])
        assert r.detected_before_success
        assert not r.undetected_success


class TestRendering:

    def test_json_keys(self):
        data = json.loads(report(verdict=Verdict.BUDGET_EXHAUSTED, halt_reason="time").to_json())
        assert data["verdict"] == "budgetExhausted"
        assert data["haltReason"] == "time"
        assert data["timeline"] == []
        assert "knowledge" not in data
        assert data["finalCost"]["successProbability"] == 1.0
        assert data["finalCost"]["hops"] == 0

    def test_text_without_actions(self):
        text = report().to_text()
        assert "(no actions executed)" in text
        assert "Detections: none" in text
        assert "Verdict: failure" in text

    def test_text_from_a_run(self, load):
        text = load("measures").run("scriptKiddie", seed=0).to_text()
        assert "Verdict: success" in text
        assert "ApacheChunkedEncodingExploit" in text
        assert "agents: 2" in text
