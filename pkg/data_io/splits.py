import numpy as np

from event_system.events.Clustering import Side
from model_core.BinaryRatings import BinaryRatings
from random_streams import stream


def split_observed(
    ratings: BinaryRatings, train_fraction: float, seed: int
) -> tuple[BinaryRatings, BinaryRatings]:
    """
    Uniformly partitions the observed entries into a training and a test set.

    Parameters:
    ratings (BinaryRatings): the observed entries to split
    train_fraction (float): share of entries that go to training, in (0, 1)
    seed (int): run seed; the permutation comes from its "split" stream

    Returns:
    (train, test), both on the same n1 x n2 grid, disjoint, together equal to `ratings`.
    Each keeps the storage order of `ratings`.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train fraction must lie in (0, 1), got {train_fraction}")

    order = stream(seed, "split").permutation(len(ratings))
    cut = int(round(train_fraction * len(ratings)))
    in_train = np.zeros(len(ratings), dtype=bool)
    in_train[order[:cut]] = True
    return ratings.subset(in_train), ratings.subset(~in_train)


def group_by_implicit_feedback(ratings: BinaryRatings, m: int, side: Side) -> np.ndarray:
    """
    Groups users or items by how many ratings they gave or received.

    Entities are ordered by ascending rating count, ties by ascending index, and cut into m
    consecutive bins whose sizes differ by at most one. Returns the 0-based group of every
    entity on that side.
    """
    user_counts, item_counts = ratings.counts()
    counts = user_counts if side is Side.USER else item_counts
    if m < 1:
        raise ValueError(f"group count must be at least 1, got {m}")
    if m > counts.size:
        raise ValueError(f"cannot form {m} groups from {counts.size} {side.value}s")

    order = np.lexsort((np.arange(counts.size), counts))
    groups = np.empty(counts.size, dtype=np.int64)
    for group, members in enumerate(np.array_split(order, m)):
        groups[members] = group
    return groups
