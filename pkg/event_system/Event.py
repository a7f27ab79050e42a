from abc import ABC
from dataclasses import fields, is_dataclass
from enum import Enum


class Event(ABC):
    """
    Marker interface for events.
    """

    def summary(self) -> str:
        """
        One-line `name field=value ...` rendering of the event, skipping unspecified fields.
        """
        if not is_dataclass(self):
            return type(self).__name__

        parts = [type(self).__name__]
        for field in fields(self):
            value = getattr(self, field.name)
            if value is EventParameterFlag.NOT_SPECIFIED:
                continue
            if isinstance(value, float):
                value = f"{value:.6g}"
            parts.append(f"{field.name}={value}")
        return " ".join(parts)


class EventParameterFlag(Enum):
    NOT_SPECIFIED = "NOT_SPECIFIED"
