import logging
from dataclasses import dataclass

import numpy as np

from errors import DataError, NumericalError
from event_system import EventBusSingleton
from event_system.events.Training import (
    BlockStepEvent,
    OuterIterationEvent,
    TrainingFinishedEvent,
)
from loss_grad.ObservationMasks import ObservationMasks, masks_from_observations
from loss_grad.objective import block_gradient, grad_M, loss_F, penalty
from model_core.BinaryRatings import BinaryRatings
from model_core.FactorSet import BLOCK_ORDER, FactorBlock, FactorSet
from model_core.GroupAssignment import GroupAssignment
from model_core.latent import assemble_M, check_dimensions, predict_probabilities
from random_streams import stream
from trainers.TrainConfig import TrainConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FitResult:
    """
    Fields:
    factors (FactorSet): the fitted factors
    loss_trace (tuple[float, ...]): loss at the initialization, then after every outer iteration
    iterations_run (int): outer iterations performed
    converged (bool): whether the tolerance test stopped the fit
    """

    factors: FactorSet
    loss_trace: tuple[float, ...]
    iterations_run: int
    converged: bool

    @property
    def final_loss(self) -> float:
        return self.loss_trace[-1]


class GS1MCTrainer:
    """
    Fits the group-specific logistic factor model for fixed group assignments.

    Blocks are visited in the order P, S_U, Q, T_J. Each visit takes `inner_steps_per_block`
    gradient steps; every step backtracks by halving until the regularized loss does not
    increase, so the loss never goes up between accepted iterates.
    """

    def __init__(
        self,
        masks: ObservationMasks,
        assignment: GroupAssignment,
        config: TrainConfig,
        name: str = "gs1mc",
    ):
        if masks.shape != (assignment.n1, assignment.n2):
            raise ValueError(
                f"masks cover {masks.shape}, assignment covers {assignment.n1} x {assignment.n2}"
            )
        self.masks = masks
        self.assignment = assignment
        self.config = config
        self.name = name
        self._steps: dict[FactorBlock, float] = {block: config.step_size for block in BLOCK_ORDER}

    @classmethod
    def from_ratings(
        cls, ratings: BinaryRatings, assignment: GroupAssignment, config: TrainConfig
    ) -> "GS1MCTrainer":
        if len(ratings) == 0:
            raise DataError("cannot fit without observed entries")
        if ratings.shape != (assignment.n1, assignment.n2):
            raise DataError(
                f"ratings are {ratings.n1} x {ratings.n2}, "
                f"groups cover {assignment.n1} x {assignment.n2}"
            )
        return cls(masks_from_observations(ratings), assignment, config)

    def with_assignment(self, assignment: GroupAssignment) -> "GS1MCTrainer":
        """A trainer on the same observations and step memory with new groups."""
        trainer = GS1MCTrainer(self.masks, assignment, self.config, self.name)
        trainer._steps = dict(self._steps)
        return trainer

    def initial_factors(self) -> FactorSet:
        rng = stream(self.config.seed, "init")
        return FactorSet.random(
            self.assignment.n1,
            self.assignment.n2,
            self.assignment.m1,
            self.assignment.m2,
            self.config.K,
            self.config.init_scale,
            rng,
        )

    def evaluate(self, factors: FactorSet) -> tuple[float, np.ndarray]:
        """Regularized loss and the latent matrix it was computed from."""
        M = assemble_M(factors, self.assignment)  # noqa: N806
        return loss_F(M, self.masks) + penalty(factors, self.config.lam), M

    def _trial(self, factors: FactorSet, block: FactorBlock, candidate: np.ndarray):
        try:
            trial = factors.with_block(block, candidate)
            loss, M = self.evaluate(trial)  # noqa: N806
        except (NumericalError, FloatingPointError):
            return None
        if not np.isfinite(loss):
            return None
        return trial, loss, M

    def step_block(
        self, factors: FactorSet, block: FactorBlock, loss: float, M: np.ndarray  # noqa: N803
    ) -> tuple[FactorSet, float, np.ndarray]:
        """
        One backtracking gradient step on `block`.

        Starts from twice the last accepted step of this block (capped at `step_size`) and
        halves until the loss does not increase. A trial whose loss is not finite counts as
        rejected. If no trial is accepted the factors are returned unchanged.

        Raises:
        NumericalError: if every trial, down to the smallest step, had a non-finite loss
        """
        gradient = block_gradient(
            block, factors, self.assignment, self.masks, self.config.lam, grad_M(M, self.masks)
        )
        current = factors.block(block)
        step = min(2.0 * self._steps[block], self.config.step_size)

        finite_trials = 0
        for _ in range(self.config.max_halvings + 1):
            accepted = self._trial(factors, block, current - step * gradient)
            finite_trials += accepted is not None
            if accepted is not None and accepted[1] <= loss:
                self._steps[block] = step
                EventBusSingleton.publish(
                    BlockStepEvent(block=block, loss=accepted[1], step_size=step)
                )
                return accepted
            step *= 0.5

        if finite_trials == 0:
            raise NumericalError(
                f"{self.name}: every {block.value} step diverged down to {step * 2.0:.3g}; "
                "lower step_size or init_scale"
            )
        EventBusSingleton.publish(BlockStepEvent(block=block, loss=loss, step_size=0.0))
        return factors, loss, M

    def run_cycle(
        self, factors: FactorSet, loss: float, M: np.ndarray  # noqa: N803
    ) -> tuple[FactorSet, float, np.ndarray]:
        for block in BLOCK_ORDER:
            for _ in range(self.config.inner_steps_per_block):
                factors, loss, M = self.step_block(factors, block, loss, M)  # noqa: N806
        return factors, loss, M

    def run_cycles(self, factors: FactorSet, cycles: int) -> tuple[FactorSet, list[float]]:
        """Runs a fixed number of cycles without a stopping test; returns the per-cycle losses."""
        loss, M = self.evaluate(factors)  # noqa: N806
        losses = []
        for _ in range(cycles):
            factors, loss, M = self.run_cycle(factors, loss, M)  # noqa: N806
            losses.append(loss)
        return factors, losses

    def fit(self, factors: FactorSet | None = None) -> FitResult:
        if factors is None:
            factors = self.initial_factors()
        check_dimensions(factors, self.assignment)

        loss, M = self.evaluate(factors)  # noqa: N806
        if not np.isfinite(loss):
            raise NumericalError(f"{self.name}: initial loss is not finite")
        trace = [loss]
        converged = False
        iterations = 0

        for iterations in range(1, self.config.max_outer_iters + 1):
            factors, loss, M = self.run_cycle(factors, loss, M)  # noqa: N806
            previous = trace[-1]
            trace.append(loss)
            EventBusSingleton.publish(
                OuterIterationEvent(trainer=self.name, iteration=iterations, loss=loss)
            )
            if abs(previous - loss) <= self.config.tolerance * max(abs(previous), 1e-300):
                converged = True
                break

        logger.debug("%s stopped after %d iterations, loss %.6g", self.name, iterations, loss)
        EventBusSingleton.publish(
            TrainingFinishedEvent(
                trainer=self.name, iterations=iterations, converged=converged, loss=loss
            )
        )
        return FitResult(factors, tuple(trace), iterations, converged)


def fit_gs1mc(
    ratings: BinaryRatings, assignment: GroupAssignment, config: TrainConfig
) -> FitResult:
    """
    Minimizes the regularized loss over P, S_U, Q, T_J for the given groups.

    Raises:
    DataError: if no entry is observed or the shapes disagree
    NumericalError: if the loss becomes non-finite
    """
    return GS1MCTrainer.from_ratings(ratings, assignment, config).fit()


def predict_missing(fit: FitResult, assignment: GroupAssignment) -> np.ndarray:
    """P(Y_ui = +1) for every (u, i), observed or not."""
    return predict_probabilities(assemble_M(fit.factors, assignment))
