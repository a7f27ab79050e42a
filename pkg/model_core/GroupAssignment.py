from dataclasses import dataclass

import numpy as np
from scipy import sparse


def _labels(vector, count: int, side: str) -> np.ndarray:
    labels = np.array(vector, dtype=np.int64, copy=True).reshape(-1)
    if count < 1:
        raise ValueError(f"{side} group count must be positive, got {count}")
    if labels.size and (labels.min() < 0 or labels.max() >= count):
        raise ValueError(f"{side} group index out of range [0, {count})")
    labels.setflags(write=False)
    return labels


def indicator(labels: np.ndarray, count: int) -> sparse.csr_matrix:
    """
    The count x n 0/1 matrix with a single 1 per column, at row labels[column].
    """
    n = labels.size
    return sparse.csr_matrix(
        (np.ones(n), (labels, np.arange(n))), shape=(count, n), dtype=np.float64
    )


@dataclass(frozen=True, eq=False)
class GroupAssignment:
    """
    Maps every user to one of m1 user groups and every item to one of m2 item groups.

    Group indices are 0-based in memory; files carry them 1-based (see `from_one_based`).
    """

    user_group: np.ndarray
    item_group: np.ndarray
    m1: int
    m2: int

    def __post_init__(self):
        object.__setattr__(self, "user_group", _labels(self.user_group, self.m1, "user"))
        object.__setattr__(self, "item_group", _labels(self.item_group, self.m2, "item"))

    @property
    def n1(self) -> int:
        return self.user_group.size

    @property
    def n2(self) -> int:
        return self.item_group.size

    def user_indicator(self) -> sparse.csr_matrix:
        """I_U, m1 x n1."""
        return indicator(self.user_group, self.m1)

    def item_indicator(self) -> sparse.csr_matrix:
        """I_J, m2 x n2."""
        return indicator(self.item_group, self.m2)

    def group_sizes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.bincount(self.user_group, minlength=self.m1),
            np.bincount(self.item_group, minlength=self.m2),
        )

    def equals(self, other: "GroupAssignment") -> bool:
        return (
            self.m1 == other.m1
            and self.m2 == other.m2
            and np.array_equal(self.user_group, other.user_group)
            and np.array_equal(self.item_group, other.item_group)
        )

    @classmethod
    def from_one_based(cls, user_group, item_group, m1: int, m2: int) -> "GroupAssignment":
        return cls(np.asarray(user_group) - 1, np.asarray(item_group) - 1, m1, m2)

    @classmethod
    def single_group(cls, n1: int, n2: int) -> "GroupAssignment":
        return cls(np.zeros(n1, dtype=np.int64), np.zeros(n2, dtype=np.int64), 1, 1)

    @classmethod
    def contiguous(cls, n1: int, n2: int, m1: int, m2: int) -> "GroupAssignment":
        """
        Equal-size contiguous blocks: users 0..n1/m1-1 in group 0, and so on.
        """
        if n1 % m1 or n2 % m2:
            raise ValueError(
                f"contiguous groups need m1 | n1 and m2 | n2, got n1={n1}, m1={m1}, n2={n2}, m2={m2}"
            )
        return cls(np.arange(n1) // (n1 // m1), np.arange(n2) // (n2 // m2), m1, m2)

    @classmethod
    def random(
        cls, n1: int, n2: int, m1: int, m2: int, rng: np.random.Generator
    ) -> "GroupAssignment":
        """Uniform random groups on both sides."""
        return cls(rng.integers(0, m1, size=n1), rng.integers(0, m2, size=n2), m1, m2)
