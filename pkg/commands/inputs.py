"""
Turning resolved options into library objects: datasets, splits, groups and configs.
"""

import logging
from pathlib import Path

from commands.Command import Command
from data_io.artifacts import load_assignment
from data_io.DatasetSource import Dataset, open_source
from data_io.splits import group_by_implicit_feedback, split_observed
from errors import UsageError
from event_system.events.Clustering import Side
from model_core.BinaryRatings import BinaryRatings
from model_core.GroupAssignment import GroupAssignment
from random_streams import derive_seed
from settings import implicit_groups, train_fraction
from trainers.TrainConfig import TrainConfig

logger = logging.getLogger(__name__)

IMPLICIT_PREFIX = "implicit"


def replication_seed(seed: int, replication: int) -> int:
    """Replication 0 runs on the run seed itself; later ones on derived seeds."""
    return seed if replication == 0 else derive_seed(seed, f"replication-{replication}")


def load_dataset(config: dict[str, object]) -> Dataset:
    return open_source(Path(str(Command.required(config, "data")))).load()


def train_test_split(
    dataset: Dataset, train_frac: float | None, seed: int
) -> tuple[BinaryRatings, BinaryRatings | None]:
    """
    An explicit fraction always re-splits the observed entries. Without one, a stored test
    split is used if the dataset has one; synthetic data with ground truth trains on every
    observed entry; anything else is split at the default training fraction.
    """
    if train_frac is None:
        if dataset.test is not None:
            return dataset.ratings, dataset.test
        if dataset.truth is not None:
            return dataset.ratings, None
        train_frac = train_fraction
    try:
        return split_observed(dataset.ratings, train_frac, seed)
    except ValueError as error:
        raise UsageError(str(error)) from None


def resolve_groups(
    groups: str | None, dataset: Dataset, train: BinaryRatings
) -> tuple[GroupAssignment, str]:
    """
    Parameters:
    groups (str | None): "truth", "single", "implicit", "implicit:m" or a groups directory;
        None picks "truth" when the dataset has ground truth
    dataset (Dataset): supplies the ground truth groups
    train (BinaryRatings): rating counts for implicit-feedback groups

    Returns:
    the assignment and a normalized description of where it came from
    """
    if groups is None:
        if dataset.truth is None:
            raise UsageError("--groups is required: truth, single, implicit:m or a directory")
        groups = "truth"

    if groups == "truth":
        if dataset.truth is None:
            raise UsageError(f"{dataset.location} has no ground-truth groups")
        return dataset.truth.assignment, "truth"
    if groups == "single":
        return GroupAssignment.single_group(train.n1, train.n2), "single"
    if groups.split(":")[0] == IMPLICIT_PREFIX:
        _, _, count = groups.partition(":")
        try:
            m = int(count) if count else implicit_groups
            users = group_by_implicit_feedback(train, m, Side.USER)
            items = group_by_implicit_feedback(train, m, Side.ITEM)
        except ValueError as error:
            raise UsageError(f"--groups {groups}: {error}") from None
        logger.info("implicit-feedback groups: %d per side from %d training entries", m, len(train))
        return GroupAssignment(users, items, m, m), f"{IMPLICIT_PREFIX}:{m}"

    assignment = load_assignment(groups)
    if (assignment.n1, assignment.n2) != train.shape:
        raise UsageError(
            f"groups in {groups} cover {assignment.n1} x {assignment.n2}, data is {train.shape}"
        )
    return assignment, str(groups)


def train_config(config: dict[str, object], lam: float, seed: int) -> TrainConfig:
    try:
        return TrainConfig(
            K=int(config["k"]),
            lam=float(lam),
            step_size=float(config["step_size"]),
            max_outer_iters=int(config["max_iters"]),
            inner_steps_per_block=int(config["inner_steps"]),
            tolerance=float(config["tolerance"]),
            seed=seed,
            init_scale=float(config["init_scale"]),
            max_halvings=int(config["max_halvings"]),
        )
    except ValueError as error:
        raise UsageError(str(error)) from None
