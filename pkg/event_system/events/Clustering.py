from dataclasses import dataclass
from enum import Enum

from event_system import Event, EventParameterFlag


class Side(Enum):
    """
    Which entities a clustering or grouping refers to.
    """

    USER = "user"
    ITEM = "item"


@dataclass
class SelfExpressionFlaggedEvent(Event):
    """
    Raised when some columns of a self-expression solve did not reach the solver tolerance.

    Fields:
    side (Side): the side being clustered, if known
    columns (int): number of flagged columns
    total (int): number of columns solved
    """

    side: Side | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    columns: int | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    total: int | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED


@dataclass
class EpochCompletedEvent(Event):
    """
    Raised by the cluster-developing trainer at the end of every epoch.
    """

    epoch: int | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    loss: float | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    misclassification: float | None | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    user_ami: float | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    item_ami: float | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
