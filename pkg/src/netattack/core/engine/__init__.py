"""Attacker profiles, software agents, budgets, the run loop and its report."""

from .parameters import PROFILE_PRESETS, AttackerProfile, AttackParameters, get_profile
from .agents import ROOT_AGENT_ID, Agent, AgentRegistry, spawn_agent, sync_knowledge
from .budgets import BudgetDecision, BudgetState, enforce_budgets
from .report import AttackReport, TimelineEntry, Verdict
from .engine import AttackEngine, run_attack

__all__ = [
    "PROFILE_PRESETS",
    "AttackerProfile",
    "AttackParameters",
    "get_profile",
    "ROOT_AGENT_ID",
    "Agent",
    "AgentRegistry",
    "spawn_agent",
    "sync_knowledge",
    "BudgetDecision",
    "BudgetState",
    "enforce_budgets",
    "AttackReport",
    "TimelineEntry",
    "Verdict",
    "AttackEngine",
    "run_attack",
]
