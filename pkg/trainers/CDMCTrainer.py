import logging
from dataclasses import dataclass, field

import numpy as np

import settings
from errors import DataError
from event_system import EventBusSingleton
from event_system.events.Clustering import EpochCompletedEvent, SelfExpressionFlaggedEvent, Side
from metrics import adjusted_mutual_information, misclassification_rate
from model_core.BinaryRatings import BinaryRatings
from model_core.FactorSet import FactorSet
from model_core.GroupAssignment import GroupAssignment
from model_core.latent import assemble_M, binarize_predictions, predict_probabilities
from random_streams import derive_seed, stream
from subspace_clustering.affinity import build_affinity
from subspace_clustering.ClusterLabels import ClusterLabels
from subspace_clustering.SelfExpression import default_mu, solve_self_expression
from subspace_clustering.spectral import spectral_cluster
from trainers.GS1MCTrainer import FitResult, GS1MCTrainer
from trainers.TrainConfig import TrainConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CdmcConfig:
    """
    Fields:
    train (TrainConfig): settings of the initial fit and of every inner loop
    m1, m2 (int): requested user and item cluster counts
    outer_epochs (int): cap on re-clustering epochs
    inner_steps (int): P, S_U, Q, T_J cycles run after each re-clustering
    ssc_alpha (float): scale of the self-expression weight, mu = alpha / coherence
    ssc_mu (float | None): explicit self-expression weight, overrides ssc_alpha
    ssc_tolerance, ssc_max_iters: self-expression solver budget
    affinity_top_q (int): keep the q largest coefficients per column, 0 keeps all
    stability_ami (float): both sides at or above this epoch-to-epoch AMI ends the loop
    recluster (bool): False keeps the random initial groups for the whole run
    seed (int): seeds the initial groups and every spectral clustering
    """

    train: TrainConfig = field(default_factory=TrainConfig)
    m1: int = settings.cluster_count
    m2: int = settings.cluster_count
    outer_epochs: int = settings.outer_epochs
    inner_steps: int = settings.cdmc_inner_steps
    ssc_alpha: float = settings.ssc_alpha
    ssc_mu: float | None = None
    ssc_tolerance: float = settings.ssc_tolerance
    ssc_max_iters: int = settings.ssc_max_iters
    affinity_top_q: int = settings.affinity_top_q
    stability_ami: float = settings.label_stability_ami
    recluster: bool = True
    seed: int = settings.default_seed

    def __post_init__(self):
        if self.outer_epochs < 1:
            raise ValueError("outer_epochs must be at least 1")
        if self.m1 < 1 or self.m2 < 1:
            raise ValueError(f"cluster counts must be positive, got m1={self.m1}, m2={self.m2}")
        if self.inner_steps < 0:
            raise ValueError("inner_steps must be nonnegative")
        if not self.ssc_alpha > 0.0 or (self.ssc_mu is not None and not self.ssc_mu > 0.0):
            raise ValueError("self-expression weight must be positive")


@dataclass(frozen=True, eq=False)
class EpochRecord:
    epoch: int
    user_labels: np.ndarray
    item_labels: np.ndarray
    misclassification: float | None
    loss: float
    user_ami: float
    item_ami: float


@dataclass(frozen=True, eq=False)
class CdmcTrace:
    """Per-epoch record of a cluster-developing run, in epoch order."""

    epochs: tuple[EpochRecord, ...]
    converged: bool

    def __len__(self) -> int:
        return len(self.epochs)

    def misclassification(self) -> list[float | None]:
        return [record.misclassification for record in self.epochs]


@dataclass(frozen=True)
class CrossRunAmi:
    epoch: int
    user_ami: float
    item_ami: float


def carry_over(
    group_factors: np.ndarray, old_labels: np.ndarray, new_labels: np.ndarray, count: int
) -> np.ndarray:
    """
    Group factor rows for a new partition.

    Each new cluster inherits the row of the old group most of its members came from,
    ties going to the lowest old index. A new cluster with no members keeps the row at its
    own index.
    """
    old_count = group_factors.shape[0]
    carried = np.zeros((count, group_factors.shape[1]))
    for cluster in range(count):
        members = old_labels[new_labels == cluster]
        if members.size:
            source = int(np.argmax(np.bincount(members, minlength=old_count)))
        elif cluster < old_count:
            source = cluster
        else:
            continue
        carried[cluster] = group_factors[source]
    return carried


class CDMCTrainer:
    """
    Alternates group-specific factor fitting with re-discovery of the groups.

    Every epoch builds f(M), clusters its columns (items) and the columns of its transpose
    (users) by sparse self-expression and spectral clustering, moves the group factors
    over to the new clusters and runs a short block-descent loop.
    """

    def __init__(self, ratings: BinaryRatings, config: CdmcConfig):
        if len(ratings) == 0:
            raise DataError("cannot fit without observed entries")
        if config.m1 > ratings.n1 or config.m2 > ratings.n2:
            raise DataError(
                f"cluster counts m1={config.m1}, m2={config.m2} exceed "
                f"{ratings.n1} users / {ratings.n2} items"
            )
        self.ratings = ratings
        self.config = config

    def initial_assignment(self) -> GroupAssignment:
        rng = stream(self.config.seed, "cdmc-groups")
        return GroupAssignment.random(
            self.ratings.n1, self.ratings.n2, self.config.m1, self.config.m2, rng
        )

    def cluster_columns(
        self, X: np.ndarray, k: int, side: Side, epoch: int  # noqa: N803
    ) -> ClusterLabels:
        mu = self.config.ssc_mu
        if mu is None:
            mu = default_mu(X, self.config.ssc_alpha)
        expression = solve_self_expression(
            X, mu, self.config.ssc_tolerance, self.config.ssc_max_iters
        )
        if expression.flagged.size:
            EventBusSingleton.publish(
                SelfExpressionFlaggedEvent(
                    side=side, columns=int(expression.flagged.size), total=X.shape[1]
                )
            )
        graph = build_affinity(expression, self.config.affinity_top_q)
        seed = derive_seed(self.config.seed, f"spectral-{side.value}-{epoch}")
        return spectral_cluster(graph, k, seed)

    def recluster(
        self, factors: FactorSet, assignment: GroupAssignment, epoch: int
    ) -> tuple[FactorSet, GroupAssignment]:
        probabilities = predict_probabilities(assemble_M(factors, assignment))
        items = self.cluster_columns(probabilities, self.config.m2, Side.ITEM, epoch)
        users = self.cluster_columns(probabilities.T, self.config.m1, Side.USER, epoch)

        regrouped = GroupAssignment(users.labels, items.labels, self.config.m1, self.config.m2)
        carried = FactorSet(
            factors.P,
            factors.Q,
            carry_over(factors.S_U, assignment.user_group, regrouped.user_group, regrouped.m1),
            carry_over(factors.T_J, assignment.item_group, regrouped.item_group, regrouped.m2),
        )
        return carried, regrouped

    def fit(
        self, holdout: BinaryRatings | None = None
    ) -> tuple[FitResult, ClusterLabels, ClusterLabels, CdmcTrace]:
        config = self.config
        assignment = self.initial_assignment()
        trainer = GS1MCTrainer.from_ratings(self.ratings, assignment, config.train)
        initial = trainer.fit()
        factors = initial.factors
        loss_trace = list(initial.loss_trace)

        records: list[EpochRecord] = []
        converged = False
        for epoch in range(1, config.outer_epochs + 1):
            previous = assignment
            if config.recluster:
                factors, assignment = self.recluster(factors, assignment, epoch)
                trainer = trainer.with_assignment(assignment)

            factors, losses = trainer.run_cycles(factors, config.inner_steps)
            loss = losses[-1] if losses else trainer.evaluate(factors)[0]
            loss_trace.extend(losses)

            misclassification = None
            if holdout is not None and len(holdout):
                probabilities = predict_probabilities(assemble_M(factors, assignment))
                misclassification = misclassification_rate(
                    binarize_predictions(probabilities), holdout
                )

            user_ami = adjusted_mutual_information(previous.user_group, assignment.user_group)
            item_ami = adjusted_mutual_information(previous.item_group, assignment.item_group)
            records.append(
                EpochRecord(
                    epoch,
                    assignment.user_group,
                    assignment.item_group,
                    misclassification,
                    loss,
                    user_ami,
                    item_ami,
                )
            )
            EventBusSingleton.publish(
                EpochCompletedEvent(
                    epoch=epoch,
                    loss=loss,
                    misclassification=misclassification,
                    user_ami=user_ami,
                    item_ami=item_ami,
                )
            )

            if (
                config.recluster
                and user_ami >= config.stability_ami
                and item_ami >= config.stability_ami
            ):
                converged = True
                logger.info("cluster labels stable after %d epochs", epoch)
                break

        fit = FitResult(
            factors, tuple(loss_trace), initial.iterations_run + len(records), converged
        )
        return (
            fit,
            ClusterLabels(assignment.user_group, config.m1),
            ClusterLabels(assignment.item_group, config.m2),
            CdmcTrace(tuple(records), converged),
        )


def fit_cdmc(
    ratings: BinaryRatings, config: CdmcConfig, holdout: BinaryRatings | None = None
) -> tuple[FitResult, ClusterLabels, ClusterLabels, CdmcTrace]:
    """
    Runs the cluster-developing loop. The holdout is only scored, never trained on.
    """
    return CDMCTrainer(ratings, config).fit(holdout)


def cross_run_ami(trace_a: CdmcTrace, trace_b: CdmcTrace) -> list[CrossRunAmi]:
    """
    AMI between two runs' user labels and item labels at each epoch both runs reached.
    """
    if not len(trace_a) or not len(trace_b):
        return []
    first_a, first_b = trace_a.epochs[0], trace_b.epochs[0]
    if (
        first_a.user_labels.size != first_b.user_labels.size
        or first_a.item_labels.size != first_b.item_labels.size
    ):
        raise ValueError("traces cover different user or item universes")

    return [
        CrossRunAmi(
            a.epoch,
            adjusted_mutual_information(a.user_labels, b.user_labels),
            adjusted_mutual_information(a.item_labels, b.item_labels),
        )
        for a, b in zip(trace_a.epochs, trace_b.epochs)
    ]
