import ipaddress
import json
from unittest.mock import patch

import pytest

from src.netattack.core.assets import AGENT, APPLICATION, Asset
from src.netattack.core.engine import AttackEngine, AttackParameters, Verdict, run_attack
from src.netattack.core.events import (
    ActionStartedEvent,
    AgentSpawnedEvent,
    AttackFinishedEvent,
    ErrorEvent,
    ShortcutEvent,
)
from src.netattack.core.netsim import LedgerEntry, replay_ledger
from src.netattack.services import apply_measures, validate_scenario

WEB = "10.0.2.10"


def actions(report):
    return [entry.action for entry in report.timeline]


class TestSingleTarget:

    def test_reliable_exploit_succeeds(self, load):
        report = load("measures").run("scriptKiddie", seed=0)

        assert report.verdict is Verdict.SUCCESS
        assert report.objective_achieved
        assert report.undetected_success
        assert actions(report) == ["IPConnect", "TCPConnect", "ApacheChunkedEncodingExploit"]
        assert all(entry.success for entry in report.timeline)
        assert [a["id"] for a in report.agents] == ["localAgent", f"agent@{WEB}"]
        assert report.success_time == report.finished_at
        assert report.final_cost.success_probability == pytest.approx(0.99 * 0.98 * 1.0)

    def test_clock_is_the_sum_of_elapsed_times(self, load):
        report = load("measures").run("scriptKiddie", seed=4)
        assert report.finished_at == pytest.approx(sum(e.elapsed for e in report.timeline))
        times = [e.time for e in report.timeline]
        assert times == sorted(times)

    def test_usually_succeeds_across_seeds(self, load):
        scenario = load("single_host")
        verdicts = [scenario.run("scriptKiddie", seed).verdict for seed in range(10)]
        assert Verdict.SUCCESS in verdicts
        assert set(verdicts) <= {Verdict.SUCCESS, Verdict.FAILURE}

    def test_knowledge_shortcut_skips_every_action(self, load):
        scenario = load("measures")
        first = scenario.run("scriptKiddie", seed=0)

        second = scenario.run("scriptKiddie", seed=0, knowledge=first.knowledge)

        assert second.verdict is Verdict.SUCCESS
        assert second.timeline == []
        assert len(second.shortcuts) == 1
        assert second.shortcuts[0]["status"] == "success"
        assert second.started_at == first.finished_at

    def test_persisted_knowledge_round_trips(self, load):
        scenario = load("measures")
        first = scenario.run("scriptKiddie", seed=0)
        restored = type(first.knowledge).from_dict(first.knowledge.to_dict())
        assert scenario.run("scriptKiddie", seed=0, knowledge=restored).timeline == []


class TestReplanning:

    def test_failed_exploit_records_missing_application(self, load):
        scenario = load("two_exploit")
        report = scenario.run("hacker", seed=0, max_retries=0)

        exploits = [e for e in report.timeline if e.action.endswith("Exploit")]
        assert exploits[0].action == "ApacheChunkedEncodingExploit"
        assert not exploits[0].success
        assert report.verdict is Verdict.FAILURE

        refuted = report.knowledge.find(Asset.of(APPLICATION, host="192.168.13.1", port=80, application="apache"))
        assert refuted is not None and refuted.is_negative

    def test_next_run_prefers_the_other_exploit(self, load):
        scenario = load("two_exploit")
        first = scenario.run("hacker", seed=0, max_retries=0)

        second = scenario.run("hacker", seed=0, knowledge=first.knowledge, max_retries=0)

        exploits = [e.action for e in second.timeline if e.action.endswith("Exploit")]
        assert exploits[0] == "WuFTPglobbingExploit"

    def test_retry_tries_next_candidate_in_the_same_run(self, load):
        scenario = load("two_exploit")
        report = scenario.run("hacker", seed=0, max_retries=3)
        exploits = [e.action for e in report.timeline if e.action.endswith("Exploit")]
        assert exploits[:2] == ["ApacheChunkedEncodingExploit", "WuFTPglobbingExploit"]


@pytest.fixture
def patched_second_hop(scenario_path, catalog):
    with open(scenario_path("pivot_three_host"), encoding="utf-8") as f:
        raw = json.load(f)
    network = raw["network"]
    network["subnets"].append("10.0.4.0/24")
    network["hosts"][2]["ports"] = {
        "80": {"banner": "Apache/1.3.27 (Unix)", "application": "apache", "version": "1.3.27", "vulnerabilities": []},
    }
    network["hosts"].append({
        "address": "10.0.4.10",
        "ports": {"21": {"application": "wu-ftpd", "version": "2.6.1", "vulnerabilities": ["CVE-2001-0550"]}},
    })
    network["rules"][1]["port"] = 80
    network["rules"].append({"source": "10.0.3.0/24", "destination": "10.0.4.0/24", "port": 21,
                             "verdict": "Allow", "priority": 30})
    raw["objective"]["template"]["attrs"]["host"] = "10.0.4.10"
    return validate_scenario(raw, catalog=catalog)


class TestPivoting:

    def test_reaches_inner_host_through_stepping_stone(self, load):
        report = load("pivot_three_host").run("hacker", seed=0)

        assert report.verdict is Verdict.SUCCESS
        pivots = [e for e in report.timeline if e.action == "TCPConnectCreatingHops"]
        assert len(pivots) == 1 and pivots[0].hops == 1
        assert report.final_cost.hops == 1
        hosts = {a["host"] for a in report.agents}
        assert {"10.0.2.10", "10.0.3.10"} <= hosts

    def test_inner_exploit_runs_from_the_stepping_stone(self, load):
        report = load("pivot_three_host").run("hacker", seed=0)
        wu = next(e for e in report.timeline if e.action == "WuFTPglobbingExploit")
        assert wu.agent == "agent@10.0.2.10"

    def test_without_pivots_the_inner_host_is_out_of_reach(self, load):
        scenario = load("pivot_three_host")
        # scriptKiddie lacks the skill for pivoting and for the FTP exploit.
        report = scenario.run("scriptKiddie", seed=0)
        assert report.verdict is Verdict.FAILURE
        assert not any(a["host"] == "10.0.3.10" for a in report.agents)

    def test_failed_pivot_records_the_hops_reached(self, patched_second_hop):
        report = patched_second_hop.run("hacker", seed=0)

        pivots = [e for e in report.timeline if e.action == "TCPConnectCreatingHops"]
        assert pivots and not any(p.success for p in pivots)
        assert pivots[0].hops == 1
        assert pivots[0].detail == "could not win an agent on 10.0.3.10"
        hosts = {a["host"] for a in report.agents}
        assert "10.0.2.10" in hosts
        assert not {"10.0.3.10", "10.0.4.10"} & hosts


class TestStealth:

    def test_noisy_attacker_is_detected(self, load):
        report = load("stealth_gated").run("scriptKiddie", seed=0)
        assert report.objective_achieved
        assert report.verdict is Verdict.DETECTED_BEFORE_SUCCESS
        assert [s for s, _ in report.detections] == ["dmz-nids"]

    def test_quiet_attacker_spends_zero_day(self, load):
        report = load("stealth_gated").run("governmentAgency", seed=0)
        assert report.verdict is Verdict.SUCCESS
        assert report.detections == []
        assert "SilentHttpdExploit" in actions(report)
        assert report.final_cost.uses_zero_day

    def test_terminal_detection_halts(self, load):
        scenario = apply_measures(load("measures"), ["add-ids"])
        params = AttackParameters(max_skill=1, terminal_on_detect=True)

        report = scenario.run(params, seed=0)

        assert report.verdict is Verdict.DETECTED_BEFORE_SUCCESS
        assert "web-nids" in report.halt_reason

    def test_noise_budget_halts(self, load):
        # Discovery is costed per probe but sweeps the whole /24.
        params = AttackParameters(
            portfolio=frozenset({"NetworkDiscovery", "TCPConnect", "ApacheChunkedEncodingExploit"}),
            tolerated_noise={"network-ids": 10.0},
            expected_success=0.5,
        )

        report = load("measures").run(params, seed=0)

        assert report.verdict is Verdict.BUDGET_EXHAUSTED
        assert "network-ids" in report.halt_reason
        assert actions(report) == ["NetworkDiscovery"]
        assert not report.objective_achieved

    def test_ledger_replay_matches_sensors(self, load):
        report = load("stealth_gated").run("scriptKiddie", seed=0)
        scenario = load("stealth_gated")
        replayed = replay_ledger(scenario.network.sensors, report.noise_ledger)
        for sensor in report.sensors:
            accumulated, detected = replayed[sensor["id"]]
            assert accumulated == pytest.approx(sensor["accumulated"], abs=1e-9)
            assert detected == sensor["detected"]

    def test_serialized_ledger_replays(self, load):
        report = load("stealth_gated").run("scriptKiddie", seed=0)
        ledger = [LedgerEntry.from_dict(d) for d in json.loads(report.to_json())["noiseLedger"]]

        assert ledger == report.noise_ledger
        replayed = replay_ledger(load("stealth_gated").network.sensors, ledger)
        assert {s["id"]: s["detected"] for s in report.sensors} == {k: v[1] for k, v in replayed.items()}


class TestDeterminism:

    def test_same_seed_same_report(self, load):
        scenario = load("single_host")
        reports = {scenario.run("hacker", seed=3).to_json() for _ in range(10)}
        assert len(reports) == 1

    def test_seed_changes_the_draws(self, load):
        scenario = load("measures")
        first = scenario.run("scriptKiddie", seed=1).timeline[0].elapsed
        second = scenario.run("scriptKiddie", seed=2).timeline[0].elapsed
        assert first != second

    def test_network_is_not_mutated(self, load):
        scenario = load("stealth_gated")
        scenario.run("scriptKiddie", seed=0)
        assert scenario.network.clock == 0.0
        assert scenario.network.noise_log == []
        assert not scenario.network.sensors[0].detected


class TestEvents:

    def test_lifecycle_events_published(self, load, mock_event_bus):
        load("measures").run("scriptKiddie", seed=0, event_bus=mock_event_bus)

        published = [c.args[0] for c in mock_event_bus.publish.call_args_list]
        kinds = [type(e) for e in published]
        assert kinds.count(ActionStartedEvent) == 3
        assert AgentSpawnedEvent in kinds
        assert isinstance(published[-1], AttackFinishedEvent)
        assert published[-1].verdict == "success"

    def test_shortcut_event(self, load, mock_event_bus):
        scenario = load("measures")
        first = scenario.run("scriptKiddie", seed=0)
        scenario.run("scriptKiddie", seed=0, knowledge=first.knowledge, event_bus=mock_event_bus)
        published = [c.args[0] for c in mock_event_bus.publish.call_args_list]
        assert any(isinstance(e, ShortcutEvent) and e.success for e in published)

    @patch("src.netattack.core.engine.engine._Run")
    def test_error_event_on_failure(self, mock_run, load, mock_event_bus):
        # Setup
        mock_run.side_effect = RuntimeError("boom")
        scenario = load("measures")
        engine = scenario.engine("scriptKiddie", event_bus=mock_event_bus)

        # Execute
        with pytest.raises(RuntimeError):
            engine.run(scenario.fresh_objective())

        # Verify
        [call] = mock_event_bus.publish.call_args_list
        event = call.args[0]
        assert isinstance(event, ErrorEvent)
        assert event.error_type == "RuntimeError"
        assert event.message == "boom"


class TestEngineConstruction:

    def test_accepts_bare_parameters(self, load):
        scenario = load("measures")
        engine = AttackEngine(scenario.network, scenario.catalog, "10.0.1.10", profile=AttackParameters(max_skill=1))
        assert engine.profile.name == "custom"
        assert engine.attacker_host == ipaddress.IPv4Address("10.0.1.10")
        assert "WuFTPglobbingExploit" not in [s.name for s in engine.portfolio()]

    def test_existing_agents_resume(self, load):
        scenario = load("measures")
        first = scenario.run("scriptKiddie", seed=0)
        assert first.knowledge.find(Asset.of(AGENT, agent=f"agent@{WEB}", capabilities=["shell", "scan", "connect"],
                                             host=WEB)) is not None
        second = scenario.run("scriptKiddie", seed=0, knowledge=first.knowledge)
        assert [a["host"] for a in second.agents] == ["10.0.1.10", WEB]

    def test_one_shot_wrapper(self, load):
        scenario = load("measures")
        report = run_attack(scenario.network, scenario.catalog, scenario.fresh_objective(), "10.0.1.10",
                            "scriptKiddie", seed=0)
        assert report.verdict is Verdict.SUCCESS
        assert actions(report) == actions(scenario.run("scriptKiddie", seed=0))
