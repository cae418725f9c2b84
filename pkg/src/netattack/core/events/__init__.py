from .event_bus import (
    CHANNEL,
    ActionCompletedEvent,
    ActionStartedEvent,
    AgentSpawnedEvent,
    AttackFinishedEvent,
    DetectionEvent,
    ErrorEvent,
    Event,
    EventBus,
    ShortcutEvent,
    event_payload,
)

__all__ = [
    "CHANNEL",
    "ActionCompletedEvent",
    "ActionStartedEvent",
    "AgentSpawnedEvent",
    "AttackFinishedEvent",
    "DetectionEvent",
    "ErrorEvent",
    "Event",
    "EventBus",
    "ShortcutEvent",
    "event_payload",
]
