import pytest

from event_system import EventBusSingleton
from event_system.EventBus import EventBus
from event_system.events.Clustering import SelfExpressionFlaggedEvent, Side
from event_system.events.Training import BlockStepEvent, OuterIterationEvent
from model_core.FactorSet import FactorBlock


def test_eventbus_filtering():
    bus = EventBus()
    calls: list[BlockStepEvent] = []

    def handler(event: BlockStepEvent):
        calls.append(event)

    # Subscribe to only steps on the T_J block
    bus.subscribe(BlockStepEvent(block=FactorBlock.T_J), handler)

    # Publish non-matching events
    bus.publish(BlockStepEvent(block=FactorBlock.P, loss=1.0, step_size=0.5))
    bus.publish(BlockStepEvent(block=FactorBlock.Q, loss=1.0, step_size=0.5))

    assert calls == []

    # Publish matching event
    bus.publish(BlockStepEvent(block=FactorBlock.T_J, loss=0.5, step_size=0.25))

    assert len(calls) == 1
    assert calls[0].block is FactorBlock.T_J


def test_type_subscription_receives_every_instance():
    bus = EventBus()
    seen = []
    bus.subscribe(OuterIterationEvent, seen.append)

    bus.publish(OuterIterationEvent(trainer="a", iteration=1, loss=2.0))
    bus.publish(OuterIterationEvent(trainer="b", iteration=2, loss=1.0))
    bus.publish(BlockStepEvent(block=FactorBlock.P))

    assert [event.iteration for event in seen] == [1, 2]


def test_unsubscribe_stops_delivery():
    bus = EventBus()
    seen = []
    bus.subscribe(OuterIterationEvent, seen.append)
    bus.unsubscribe(OuterIterationEvent, seen.append)

    bus.publish(OuterIterationEvent(iteration=1))

    assert seen == []


def test_singleton_reset_drops_subscribers():
    seen = []
    EventBusSingleton.subscribe(SelfExpressionFlaggedEvent, seen.append)
    EventBusSingleton.publish(SelfExpressionFlaggedEvent(side=Side.USER, columns=1, total=5))
    EventBusSingleton.reset()
    EventBusSingleton.publish(SelfExpressionFlaggedEvent(side=Side.USER, columns=1, total=5))

    assert len(seen) == 1


def test_summary_skips_unspecified_fields():
    text = OuterIterationEvent(trainer="gs1mc", loss=0.125).summary()

    assert text == "OuterIterationEvent trainer=gs1mc loss=0.125"


def test_subscribe_rejects_non_events():
    bus = EventBus()
    with pytest.raises(TypeError):
        bus.subscribe(int, print)
    with pytest.raises(TypeError):
        bus.subscribe("BlockStepEvent", print)
