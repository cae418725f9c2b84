"""
Command line surface.

    netattack plan <scenario> [--profile P] [--out plan.json]
    netattack run <scenario> --seed S [--profile P] [--report report.json] [--text] [--knowledge kb.json]
    netattack sweep <scenario> --seed S [--incremental] [--out sweep.json]
    netattack countermeasures <scenario> [--max-size K] [--seeds N] [--out result.json]
    netattack validate <scenario>

Exit codes: 0 success or safe, 1 objective failure or unsafe, 2 invalid input.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional

import config.settings as settings

from .core.assets import EnvironmentKnowledge
from .core.engine import ROOT_AGENT_ID, AgentRegistry, Verdict
from .core.events import EventBus
from .core.exceptions import NetAttackError, ScenarioValidationError, UnplannableError
from .core.factories.logger_factory import LoggerFactory
from .core.planner import Planner, TopologyView
from .monitoring import metrics
from .services import Scenario, load_scenario, minimal_measure_set, sweep_profiles

logger = LoggerFactory.get_logger("netattack.cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2


def _write_json(path: str, payload: Any) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _profile_name(scenario: Scenario, requested: Optional[str]) -> str:
    if requested:
        return requested
    return scenario.profiles[0].name if scenario.profiles else "scriptKiddie"


def _event_bus() -> Optional[EventBus]:
    return EventBus(settings.REDIS_URL) if settings.REDIS_URL else None


def cmd_validate(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    print(f"✅ {args.scenario}: valid ({len(scenario.network.hosts)} hosts, {len(scenario.catalog)} actions, "
          f"{len(scenario.profiles)} profiles, {len(scenario.measures)} measures)")
    return EXIT_OK


def cmd_plan(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    engine = scenario.engine(_profile_name(scenario, args.profile))
    env = EnvironmentKnowledge(ROOT_AGENT_ID)
    AgentRegistry().create_root(scenario.attacker_host, scenario.attacker_capabilities, engine.parameters, env)
    planner = Planner(engine.portfolio(), engine.parameters, topology=TopologyView(scenario.network))
    try:
        graph = planner.build(scenario.fresh_objective())
    except UnplannableError as e:
        print(f"❌ Unplannable: {e}", file=sys.stderr)
        return EXIT_FAILURE
    plan = {
        "scenario": scenario.name,
        "profile": engine.profile.name,
        "graph": graph.to_dict(),
        "selection": planner.describe(graph, env),
    }
    if args.out:
        _write_json(args.out, plan)
        print(f"📝 Plan written to {args.out} ({graph.size()} nodes)")
    else:
        print(json.dumps(plan, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    knowledge = None
    if args.knowledge and Path(args.knowledge).exists():
        knowledge = EnvironmentKnowledge.from_dict(json.loads(Path(args.knowledge).read_text(encoding="utf-8")))
        logger.info(f"📚 Loaded {len(knowledge)} asset(s) from {args.knowledge}")

    profile = _profile_name(scenario, args.profile)
    handler: Optional[logging.Handler] = None
    run_logger: Optional[logging.Logger] = None
    if args.log_file:
        run_logger, handler = LoggerFactory.setup_run_logger(f"{profile}_seed{args.seed}", args.scenario)
    try:
        report = scenario.run(profile, args.seed, knowledge=knowledge, event_bus=_event_bus())
    finally:
        if run_logger is not None:
            LoggerFactory.detach(run_logger, handler)

    if args.knowledge and report.knowledge is not None:
        _write_json(args.knowledge, report.knowledge.to_dict())
    if args.report:
        target = Path(args.report)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(report.to_json() + "\n", encoding="utf-8")
    if args.text or not args.report:
        print(report.to_text())
    return EXIT_OK if report.verdict is Verdict.SUCCESS else EXIT_FAILURE


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    result = sweep_profiles(scenario, seed=args.seed, incremental=args.incremental)
    print(result.to_text())
    if args.out:
        _write_json(args.out, result.to_dict())
    return EXIT_OK if any(r.report.objective_achieved for r in result.rows) else EXIT_FAILURE


def cmd_countermeasures(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    result = minimal_measure_set(scenario, max_size=args.max_size, seeds=range(args.seeds))
    print(result.to_text())
    if args.out:
        _write_json(args.out, result.to_dict())
    return EXIT_OK if result.safe else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netattack", description="Plan and simulate network attacks against scenario files")
    parser.add_argument("--metrics", type=str, default=None, help="Write Prometheus metrics to this file afterwards")
    parser.add_argument("--log-file", action="store_true", help="Also log to a timestamped file under logs/")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="Build the attack graph and show the preferred actions")
    p.add_argument("scenario")
    p.add_argument("--profile", type=str, default=None, help="Attacker profile (default: the scenario's first)")
    p.add_argument("--out", type=str, default=None, help="Write the plan as JSON")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("run", help="Run one attack simulation")
    p.add_argument("scenario")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", type=str, default=None)
    p.add_argument("--report", type=str, default=None, help="Write the JSON report here")
    p.add_argument("--text", action="store_true", help="Print the text summary")
    p.add_argument("--knowledge", type=str, default=None, help="Persisted attacker knowledge (read, then updated)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="Run the objective once per attacker profile")
    p.add_argument("scenario")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--incremental", action="store_true", help="Grow each portfolio one action at a time")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("countermeasures", help="Find the smallest measure set making the scenario safe")
    p.add_argument("scenario")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--seeds", type=int, default=settings.SAFETY_SEEDS)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_countermeasures)

    p = sub.add_parser("validate", help="Check a scenario file and report every problem")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK

    file_handler = LoggerFactory.setup_global_file_logger() if args.log_file and args.command != "run" else None
    try:
        return args.func(args)
    except ScenarioValidationError as e:
        print(f"❌ {args.scenario}: {len(e.diagnostics)} problem(s)", file=sys.stderr)
        for diagnostic in e.diagnostics:
            print(f"  - {diagnostic}", file=sys.stderr)
        return EXIT_INVALID
    except (NetAttackError, KeyError, OSError, json.JSONDecodeError) as e:
        logger.error(f"❌ {args.command} failed: {e}")
        return EXIT_INVALID
    finally:
        if args.metrics:
            metrics.write_metrics(args.metrics)
        LoggerFactory.detach(logging.getLogger(), file_handler)


if __name__ == "__main__":
    sys.exit(main())
