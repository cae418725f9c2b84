import sys
import os
import argparse

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)) + "/..")

import config.settings as settings
from src.netattack.core.exceptions import ScenarioValidationError
from src.netattack.services import load_scenario, sweep_profiles


def verify_scenarios(seeds: int) -> int:
    print("🧪 Verifying bundled scenarios...")
    print(f"   Catalog: {settings.CATALOG_PATH}")

    failures = 0
    for path in sorted(settings.SCENARIOS_DIR.glob("*.json")):
        try:
            scenario = load_scenario(path)
        except ScenarioValidationError as e:
            print(f"❌ {path.name}: {len(e.diagnostics)} problem(s)")
            for diagnostic in e.diagnostics:
                print(f"     - {diagnostic}")
            failures += 1
            continue

        print(f"\n📄 {path.name} ({scenario.name})")
        for seed in range(seeds):
            result = sweep_profiles(scenario, seed=seed)
            for row in result.rows:
                r = row.report
                print(f"   seed={seed} {row.profile:<18} {r.verdict.value:<22} "
                      f"{len(r.timeline):>3} action(s)  t={r.finished_at:.1f}s")

    if failures:
        print(f"\n❌ Verification Failed: {failures} scenario(s) invalid")
        return 1
    print("\n✅ Verification Passed: every bundled scenario loads and runs.")
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Load and run every bundled scenario")
    parser.add_argument("--seeds", type=int, default=3, help="Seeds per profile")
    args = parser.parse_args()
    sys.exit(verify_scenarios(args.seeds))
