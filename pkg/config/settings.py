"""
Configuration settings for the netattack planning and simulation engine.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Project root directory
PROJECT_ROOT: Path = Path(__file__).parent.parent

# Data directories
DATA_DIR: Path = PROJECT_ROOT / "data"
CATALOG_DIR: Path = DATA_DIR / "catalog"
SCENARIOS_DIR: Path = DATA_DIR / "scenarios"
LOGS_DIR: Path = PROJECT_ROOT / "logs"

# Built-in action catalog (merged with scenario overrides by name)
CATALOG_PATH: Path = Path(os.getenv("NETATTACK_CATALOG_PATH", str(CATALOG_DIR / "default_catalog.json")))

# Scenario files
SCENARIO_FORMAT_VERSION: int = 1

# Knowledge base
# Trust decays exponentially; the half-life is in simulated seconds.
TRUST_HALF_LIFE: float = float(os.getenv("NETATTACK_TRUST_HALF_LIFE", "3600"))
DEFAULT_MIN_TRUST: float = float(os.getenv("NETATTACK_MIN_TRUST", "0.5"))

# Planner Settings
GRAPH_DEPTH_LIMIT: int = int(os.getenv("NETATTACK_DEPTH_LIMIT", "8"))
FULL_LOOKAHEAD: bool = os.getenv("NETATTACK_FULL_LOOKAHEAD", "true").lower() == "true"

# Cost scalarization weights (see planner.costs.scalarize)
WEIGHT_FAILURE: float = 1.0
WEIGHT_TIME: float = 0.25
WEIGHT_STEALTH: float = 1.0
WEIGHT_HOPS: float = 0.5
NOISE_REFERENCE: float = 10.0
MAX_HOPS: int = 4

# Engine Settings
MAX_RETRIES: int = int(os.getenv("NETATTACK_MAX_RETRIES", "3"))

# Countermeasure search / sweeps
SAFETY_SEEDS: int = int(os.getenv("NETATTACK_SAFETY_SEEDS", "16"))
EXHAUSTIVE_MEASURE_LIMIT: int = 12
SWEEP_WORKERS: int = int(os.getenv("NETATTACK_SWEEP_WORKERS", "1"))

# Logging
LOG_LEVEL: str = os.getenv("NETATTACK_LOG_LEVEL", "INFO")

# Optional event mirroring (see core.events.event_bus)
REDIS_URL = os.getenv("REDIS_URL")


# Create directories if they don't exist
for directory in [DATA_DIR, LOGS_DIR]:
    directory.mkdir(parents=True, exist_ok=True)
