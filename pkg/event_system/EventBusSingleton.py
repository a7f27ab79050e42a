from event_system import Event
from event_system.EventBus import EventBus, EventHandler


class EventBusSingleton:
    """
    The process-wide EventBus. Trainers, data loaders and monitors all talk through it.
    """

    _instance: EventBus | None = None

    @classmethod
    def get(cls) -> EventBus:
        if cls._instance is None:
            cls._instance = EventBus()
        return cls._instance

    @staticmethod
    def subscribe(event: Event | type[Event], handler: EventHandler) -> None:
        EventBusSingleton.get().subscribe(event, handler)

    @staticmethod
    def unsubscribe(event: Event | type[Event], handler: EventHandler) -> None:
        EventBusSingleton.get().unsubscribe(event, handler)

    @staticmethod
    def publish(event: Event) -> None:
        EventBusSingleton.get().publish(event)

    @staticmethod
    def reset() -> None:
        """Removes every subscriber from the shared bus."""
        EventBusSingleton.get().clear()
