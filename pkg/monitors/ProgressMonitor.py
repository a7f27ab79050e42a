import logging

from event_system import Event, EventBusSingleton
from event_system.events.Clustering import EpochCompletedEvent, SelfExpressionFlaggedEvent
from event_system.events.Data import ArtifactWrittenEvent, RatingsBinarizedEvent
from event_system.events.Training import (
    BlockStepEvent,
    OuterIterationEvent,
    TrainingFinishedEvent,
)

logger = logging.getLogger(__name__)


class ProgressMonitor:
    """
    Turns bus events into log lines.

    Per-block steps and artifact writes are logged at DEBUG, outer iterations every
    `every` iterations at INFO, everything else at INFO.
    """

    DEBUG_EVENTS: tuple[type[Event], ...] = (BlockStepEvent, ArtifactWrittenEvent)
    INFO_EVENTS: tuple[type[Event], ...] = (
        TrainingFinishedEvent,
        EpochCompletedEvent,
        RatingsBinarizedEvent,
        SelfExpressionFlaggedEvent,
    )

    def __init__(self, every: int = 10):
        self.every = max(1, every)
        self._attached = False

    def attach(self) -> "ProgressMonitor":
        for event_type in (*self.DEBUG_EVENTS, *self.INFO_EVENTS):
            EventBusSingleton.subscribe(event_type, self.on_event)
        EventBusSingleton.subscribe(OuterIterationEvent, self.on_iteration)
        self._attached = True
        return self

    def detach(self):
        if not self._attached:
            return
        for event_type in (*self.DEBUG_EVENTS, *self.INFO_EVENTS):
            EventBusSingleton.unsubscribe(event_type, self.on_event)
        EventBusSingleton.unsubscribe(OuterIterationEvent, self.on_iteration)
        self._attached = False

    def on_event(self, event: Event):
        level = logging.DEBUG if isinstance(event, self.DEBUG_EVENTS) else logging.INFO
        logger.log(level, event.summary())

    def on_iteration(self, event: OuterIterationEvent):
        if isinstance(event.iteration, int) and event.iteration % self.every == 0:
            logger.info(event.summary())
        else:
            logger.debug(event.summary())
