import json
from unittest.mock import MagicMock, patch

from src.netattack.core.events import (
    CHANNEL,
    ActionCompletedEvent,
    AgentSpawnedEvent,
    DetectionEvent,
    Event,
    EventBus,
    ShortcutEvent,
    event_payload,
)


class TestEventBus:

    def test_local_subscribers_receive_matching_events(self):
        bus = EventBus()
        received = []
        bus.subscribe(DetectionEvent, received.append)

        bus.publish(DetectionEvent(sensor="dmz-nids", category="network-ids", sim_time=12.0))
        bus.publish(ShortcutEvent(asset="AgentAsset(...)", success=True, sim_time=0.0))

        assert len(received) == 1
        assert received[0].sensor == "dmz-nids"

    def test_base_class_subscription_sees_everything(self):
        bus = EventBus()
        received = []
        bus.subscribe(Event, received.append)

        bus.publish(ShortcutEvent(asset="x", success=False, sim_time=1.0))
        bus.publish(ActionCompletedEvent(agent="localAgent", action="IPConnect", asset="x",
                                         success=True, sim_time=2.0, elapsed=1.0))

        assert [type(e).__name__ for e in received] == ["ShortcutEvent", "ActionCompletedEvent"]

    def test_failing_subscriber_does_not_break_publish(self):
        bus = EventBus()
        received = []

        def broken(event):
            raise RuntimeError("boom")

        bus.subscribe(Event, broken)
        bus.subscribe(Event, received.append)
        bus.publish(ShortcutEvent(asset="x", success=True, sim_time=0.0))

        assert len(received) == 1

    @patch("src.netattack.core.events.event_bus.threading")
    @patch("src.netattack.core.events.event_bus.redis")
    def test_events_mirrored_to_redis(self, mock_redis, mock_threading):
        client = MagicMock()
        mock_redis.from_url.return_value = client

        bus = EventBus("redis://localhost:6379/0")
        bus.publish(DetectionEvent(sensor="s1", category="host-log", sim_time=3.0))

        client.pubsub.return_value.subscribe.assert_called_once_with(CHANNEL)
        channel, payload = client.publish.call_args[0]
        assert channel == CHANNEL
        data = json.loads(payload)
        assert data["type"] == "DetectionEvent"
        assert data["data"]["sensor"] == "s1"

    @patch("src.netattack.core.events.event_bus.threading")
    @patch("src.netattack.core.events.event_bus.redis")
    def test_propagate_false_stays_local(self, mock_redis, mock_threading):
        client = MagicMock()
        mock_redis.from_url.return_value = client

        bus = EventBus("redis://localhost:6379/0")
        bus.publish(ShortcutEvent(asset="x", success=True, sim_time=0.0), propagate=False)

        client.publish.assert_not_called()

    @patch("src.netattack.core.events.event_bus.redis")
    def test_redis_connection_failure_falls_back_to_local(self, mock_redis):
        mock_redis.from_url.side_effect = ConnectionError("refused")

        bus = EventBus("redis://localhost:6379/0")
        received = []
        bus.subscribe(Event, received.append)
        bus.publish(ShortcutEvent(asset="x", success=True, sim_time=0.0))

        assert bus._redis_enabled is False
        assert len(received) == 1

    def test_no_redis_without_url(self, monkeypatch):
        monkeypatch.delenv("REDIS_URL", raising=False)
        bus = EventBus()
        assert bus.redis_client is None

    def test_event_payload(self):
        event = AgentSpawnedEvent(agent="agent-2", host="10.0.1.10", parent="localAgent", sim_time=4.5)
        data = json.loads(event_payload(event))
        assert data["type"] == "AgentSpawnedEvent"
        assert data["timestamp"] == event.timestamp
        assert data["data"]["host"] == "10.0.1.10"
