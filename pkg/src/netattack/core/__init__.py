"""Core engine modules: knowledge, goals, actions, simulator, planner and execution."""
