from dataclasses import dataclass

from event_system import Event, EventParameterFlag


@dataclass
class RatingsBinarizedEvent(Event):
    """
    Raised when 1-5 star ratings have been quantized to +1/-1.

    Fields:
    mean_rating (float): the global mean used as the threshold
    kept (int): number of ratings that became observed entries
    dropped (int): number of ratings exactly equal to the mean, left out of the observed set
    """

    mean_rating: float | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    kept: int | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    dropped: int | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED


@dataclass
class ArtifactWrittenEvent(Event):
    """
    Raised after a file has been atomically written to disk.
    """

    path: str | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    kind: str | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
