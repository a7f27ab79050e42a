from collections.abc import Callable
from dataclasses import dataclass
from typing import TypeVar

from event_system import Event, EventParameterFlag

AnyEvent = TypeVar("AnyEvent", bound=Event)
"""Bound to Event so handler signatures accept any subclass."""

EventHandler = Callable[[AnyEvent], None]


@dataclass(frozen=True)
class Subscription:
    handler: EventHandler
    template: Event | None

    def matches(self, event: Event) -> bool:
        """
        True if every specified field of the template agrees with the event.

        A template field holding a type matches any event value that is an instance of it;
        any other value must compare equal.
        """
        if self.template is None:
            return True
        for name, expected in vars(self.template).items():
            if expected is EventParameterFlag.NOT_SPECIFIED:
                continue
            actual = getattr(event, name, None)
            if isinstance(expected, type):
                if not isinstance(actual, expected):
                    return False
            elif actual != expected:
                return False
        return True


class EventBus:
    """
    Publish-subscribe hub for dataclass events.

    Handlers subscribe to an event type, or to an event instance whose specified fields act
    as a filter. `publish` is synchronous: matching handlers run in subscription order
    before it returns, so a trainer's next step never overtakes its monitors.
    """

    def __init__(self):
        self._subscriptions: dict[type[Event], list[Subscription]] = {}

    def subscribe(self, event: Event | type[Event], handler: EventHandler):
        """
        Parameters:
        event (Event | type[Event]): a type receives every event of that type; an instance
            receives only events whose fields match its specified fields
        handler (EventHandler): called with each matching event

        Raises:
        TypeError: if `event` is neither an Event nor an Event subclass
        """
        if isinstance(event, type):
            if not issubclass(event, Event):
                raise TypeError(f"{event.__name__} is not an Event type")
            event_type, template = event, None
        elif isinstance(event, Event):
            event_type, template = type(event), event
        else:
            raise TypeError(f"cannot subscribe to {event!r}: not an Event or Event type")
        self._subscriptions.setdefault(event_type, []).append(Subscription(handler, template))

    def unsubscribe(self, event: Event | type[Event], handler: EventHandler):
        """Removes every subscription of `handler` to the event's type."""
        event_type = event if isinstance(event, type) else type(event)
        if event_type in self._subscriptions:
            self._subscriptions[event_type] = [
                sub for sub in self._subscriptions[event_type] if sub.handler != handler
            ]

    def publish(self, event: Event):
        # handlers may unsubscribe while we iterate
        for subscription in list(self._subscriptions.get(type(event), [])):
            if subscription.matches(event):
                subscription.handler(event)

    def clear(self):
        self._subscriptions = {}
