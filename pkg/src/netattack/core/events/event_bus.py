"""
Event Bus Module
Handles attack lifecycle event publishing and subscription.
"""

import json
import os
import threading
import time
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, DefaultDict, Dict, List, Optional, Type

from ..factories.logger_factory import LoggerFactory

try:
    import redis
except ImportError:
    redis = None

logger = LoggerFactory.get_logger("netattack.events")

CHANNEL = "netattack_events"


@dataclass
class Event:
    """Base class for all events."""
    timestamp: float = field(default_factory=time.time, init=False)


@dataclass
class ActionStartedEvent(Event):
    """Event triggered when an agent starts an action."""
    agent: str
    action: str
    asset: str
    sim_time: float


@dataclass
class ActionCompletedEvent(Event):
    """Event triggered when an action finishes, successfully or not."""
    agent: str
    action: str
    asset: str
    success: bool
    sim_time: float
    elapsed: float


@dataclass
class ShortcutEvent(Event):
    """Event triggered when a goal is decided from stored knowledge at zero cost."""
    asset: str
    success: bool
    sim_time: float


@dataclass
class AgentSpawnedEvent(Event):
    """Event triggered when a new agent is created on a compromised host."""
    agent: str
    host: str
    parent: str
    sim_time: float


@dataclass
class DetectionEvent(Event):
    """Event triggered when an IDS sensor crosses its threshold."""
    sensor: str
    category: str
    sim_time: float


@dataclass
class AttackFinishedEvent(Event):
    """Event triggered when a run reaches its verdict."""
    profile: str
    seed: int
    verdict: str
    sim_time: float
    actions: int


@dataclass
class ErrorEvent(Event):
    """Event triggered when an error occurs."""
    error_type: str
    message: str
    context: Dict[str, Any] = field(default_factory=dict)


def event_payload(event: Event) -> str:
    """JSON document mirrored to the Redis channel for one event."""
    return json.dumps({
        "type": type(event).__name__,
        "timestamp": event.timestamp,
        "data": asdict(event),
    })


class EventBus:
    """
    Dispatches attack events to in-process subscribers and, when a Redis URL is
    configured, mirrors them on CHANNEL so other processes can follow a run.
    """
    _redis_enabled = False

    def __init__(self, redis_url: Optional[str] = None):
        self.subscribers: DefaultDict[Type[Event], List[Callable[[Event], None]]] = defaultdict(list)
        self.redis_client = None
        self.pubsub = None
        url = redis_url or os.getenv("REDIS_URL")
        if url and redis is not None:
            self._connect(url)

    def _connect(self, url: str) -> None:
        try:
            client = redis.from_url(url)
            pubsub = client.pubsub()
            pubsub.subscribe(CHANNEL)
        except Exception as e:
            logger.warning(f"⚠️ Redis unavailable, events stay local: {e}")
            return

        self.redis_client, self.pubsub = client, pubsub
        self._redis_enabled = True
        self.listener_thread = threading.Thread(target=self._follow_remote, daemon=True)
        self.listener_thread.start()
        logger.info(f"✅ Mirroring attack events to {url} ({CHANNEL})")

    def _follow_remote(self) -> None:
        """Trace events other processes put on the channel."""
        if self.pubsub is None:
            return
        for message in self.pubsub.listen():
            if message.get("type") != "message":
                continue
            try:
                data = json.loads(message["data"])
            except (TypeError, ValueError) as e:
                logger.error(f"❌ Unreadable event on {CHANNEL}: {e}")
                continue
            logger.debug(f"Remote {data.get('type')} at {data.get('timestamp')}")

    def subscribe(self, event_type: Type[Event], callback: Callable[[Event], None]) -> None:
        """Call `callback` for every published event that is an instance of `event_type`."""
        self.subscribers[event_type].append(callback)
        logger.debug(f"🔌 Subscribed to {event_type.__name__}")

    def publish(self, event: Event, propagate: bool = True) -> None:
        """
        Deliver an event to local subscribers, then mirror it to Redis.

        Args:
            event: Event instance to deliver
            propagate: False keeps the event in-process
        """
        for event_type, callbacks in list(self.subscribers.items()):
            if not isinstance(event, event_type):
                continue
            for callback in callbacks:
                try:
                    callback(event)
                except Exception as e:
                    logger.error(f"❌ Subscriber failed on {type(event).__name__}: {e}")

        if not (propagate and self._redis_enabled and self.redis_client is not None):
            return
        try:
            self.redis_client.publish(CHANNEL, event_payload(event))
        except Exception as e:
            logger.warning(f"⚠️ Could not mirror {type(event).__name__} to Redis: {e}")
