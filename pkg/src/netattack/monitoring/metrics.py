from pathlib import Path
from typing import Union

from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest

REGISTRY = CollectorRegistry()

# Metrics definitions
ACTION_COUNT = Counter(
    "netattack_actions_total",
    "Total number of executed attack actions",
    ["action", "outcome"],
    registry=REGISTRY,
)

DETECTION_COUNT = Counter(
    "netattack_detections_total",
    "Total number of sensor detections",
    ["category"],
    registry=REGISTRY,
)

RUN_COUNT = Counter(
    "netattack_runs_total",
    "Total number of attack runs by verdict",
    ["verdict"],
    registry=REGISTRY,
)

RUN_SIM_SECONDS = Histogram(
    "netattack_run_sim_seconds",
    "Simulated duration of attack runs in seconds",
    buckets=(60, 300, 900, 3600, 14400, 86400, 604800, float("inf")),
    registry=REGISTRY,
)


def record_action(action: str, success: bool) -> None:
    ACTION_COUNT.labels(action=action, outcome="success" if success else "failure").inc()


def record_detection(category: str) -> None:
    DETECTION_COUNT.labels(category=category).inc()


def record_run(verdict: str, sim_seconds: float) -> None:
    RUN_COUNT.labels(verdict=verdict).inc()
    RUN_SIM_SECONDS.observe(sim_seconds)


def metrics_text() -> bytes:
    """Expose Prometheus metrics."""
    return generate_latest(REGISTRY)


def write_metrics(path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(metrics_text())
    return path
