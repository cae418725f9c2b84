"""Simulated network ground truth and IDS noise accounting."""

from .model import FirewallRule, Sensor, Service, SimHost, Verdict
from .noise import LedgerEntry, NoiseRecord, ledger_to_dicts, replay_ledger
from .network import SimNetwork

__all__ = [
    "FirewallRule",
    "Sensor",
    "Service",
    "SimHost",
    "Verdict",
    "LedgerEntry",
    "NoiseRecord",
    "ledger_to_dicts",
    "replay_ledger",
    "SimNetwork",
]
