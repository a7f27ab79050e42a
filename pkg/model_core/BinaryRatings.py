from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np


def _index_vector(values) -> np.ndarray:
    vector = np.array(values, dtype=np.int64, copy=True).reshape(-1)
    vector.setflags(write=False)
    return vector


@dataclass(frozen=True, eq=False)
class BinaryRatings:
    """
    A sparse n1 x n2 matrix of observed +1/-1 ratings.

    Entries are stored as parallel `users`, `items` and `values` vectors (0-based
    indices). The observed index set Omega is the set of (users[k], items[k]) pairs.
    """

    n1: int
    n2: int
    users: np.ndarray
    items: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        users = _index_vector(self.users)
        items = _index_vector(self.items)
        values = np.array(self.values, dtype=np.int8, copy=True).reshape(-1)
        values.setflags(write=False)

        if self.n1 < 1 or self.n2 < 1:
            raise ValueError(f"dimensions must be positive, got {self.n1} x {self.n2}")
        if not (users.size == items.size == values.size):
            raise ValueError("users, items and values must have the same length")
        if users.size:
            if users.min() < 0 or users.max() >= self.n1:
                raise ValueError(f"user index out of range [0, {self.n1})")
            if items.min() < 0 or items.max() >= self.n2:
                raise ValueError(f"item index out of range [0, {self.n2})")
            if not np.all(np.abs(values) == 1):
                raise ValueError("rating values must be +1 or -1")
            linear = users * self.n2 + items
            if np.unique(linear).size != linear.size:
                raise ValueError("duplicate (user, item) entries")

        object.__setattr__(self, "users", users)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n1, self.n2

    def omega(self) -> set[tuple[int, int]]:
        return {(int(u), int(i)) for u, i in zip(self.users, self.items)}

    def linear_index(self) -> np.ndarray:
        return self.users * self.n2 + self.items

    def subset(self, selection: np.ndarray) -> "BinaryRatings":
        """
        The entries picked by a boolean mask or an index array, on the same n1 x n2 grid.
        """
        return BinaryRatings(
            self.n1, self.n2, self.users[selection], self.items[selection], self.values[selection]
        )

    def to_dense(self) -> np.ndarray:
        """n1 x n2 matrix with the observed values and 0 elsewhere."""
        dense = np.zeros((self.n1, self.n2), dtype=np.int8)
        dense[self.users, self.items] = self.values
        return dense

    def positive_fraction(self) -> float:
        return float(np.mean(self.values == 1)) if len(self) else 0.0

    def counts(self) -> tuple[np.ndarray, np.ndarray]:
        """Number of observed entries per user and per item."""
        return (
            np.bincount(self.users, minlength=self.n1),
            np.bincount(self.items, minlength=self.n2),
        )

    @classmethod
    def from_entries(
        cls, n1: int, n2: int, entries: Iterable[tuple[int, int, int]]
    ) -> "BinaryRatings":
        triples = list(entries)
        if not triples:
            return cls.empty(n1, n2)
        users, items, values = zip(*triples)
        return cls(n1, n2, np.array(users), np.array(items), np.array(values))

    @classmethod
    def from_dense(cls, matrix: np.ndarray) -> "BinaryRatings":
        """Treats nonzero entries of a +1/-1/0 matrix as observed."""
        users, items = np.nonzero(matrix)
        return cls(matrix.shape[0], matrix.shape[1], users, items, matrix[users, items])

    @classmethod
    def empty(cls, n1: int, n2: int) -> "BinaryRatings":
        return cls(n1, n2, np.zeros(0), np.zeros(0), np.zeros(0))
