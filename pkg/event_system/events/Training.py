from dataclasses import dataclass

from event_system import Event, EventParameterFlag
from model_core.FactorSet import FactorBlock


@dataclass
class BlockStepEvent(Event):
    """
    Raised after one backtracking gradient step on a single factor block.

    Fields:
    block (FactorBlock): the block that was updated
    loss (float): the regularized loss after the step
    step_size (float): the accepted step, or 0.0 if every halving was rejected
    """

    block: FactorBlock | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    loss: float | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    step_size: float | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED


@dataclass
class OuterIterationEvent(Event):
    """
    Raised after a full P, S_U, Q, T_J cycle.
    """

    trainer: str | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    iteration: int | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    loss: float | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED


@dataclass
class TrainingFinishedEvent(Event):
    trainer: str | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    iterations: int | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    converged: bool | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
    loss: float | EventParameterFlag = EventParameterFlag.NOT_SPECIFIED
