"""Configuration package for netattack."""

from .settings import (
    PROJECT_ROOT,
    DATA_DIR,
    CATALOG_PATH,
    SCENARIOS_DIR,
    LOGS_DIR,
    SCENARIO_FORMAT_VERSION,
    TRUST_HALF_LIFE,
    DEFAULT_MIN_TRUST,
    GRAPH_DEPTH_LIMIT,
    FULL_LOOKAHEAD,
    MAX_RETRIES,
    SAFETY_SEEDS,
    EXHAUSTIVE_MEASURE_LIMIT,
    SWEEP_WORKERS,
)

__all__ = [
    "PROJECT_ROOT",
    "DATA_DIR",
    "CATALOG_PATH",
    "SCENARIOS_DIR",
    "LOGS_DIR",
    "SCENARIO_FORMAT_VERSION",
    "TRUST_HALF_LIFE",
    "DEFAULT_MIN_TRUST",
    "GRAPH_DEPTH_LIMIT",
    "FULL_LOOKAHEAD",
    "MAX_RETRIES",
    "SAFETY_SEEDS",
    "EXHAUSTIVE_MEASURE_LIMIT",
    "SWEEP_WORKERS",
]
