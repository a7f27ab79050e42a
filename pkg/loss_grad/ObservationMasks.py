from dataclasses import dataclass

import numpy as np

from model_core.BinaryRatings import BinaryRatings


@dataclass(frozen=True, eq=False)
class ObservationMasks:
    """
    Y1 marks observed +1 entries, Yneg1 observed -1 entries. Both are dense n1 x n2
    float matrices of zeros and ones; their sum is the indicator of Omega.
    """

    Y1: np.ndarray
    Yneg1: np.ndarray

    def __post_init__(self):
        y1 = np.array(self.Y1, dtype=np.float64, copy=True)
        yneg1 = np.array(self.Yneg1, dtype=np.float64, copy=True)
        if y1.shape != yneg1.shape or y1.ndim != 2:
            raise ValueError(f"mask shapes differ: {y1.shape} vs {yneg1.shape}")
        if np.any(y1 * yneg1 != 0):
            raise ValueError("Y1 and Yneg1 overlap")
        y1.setflags(write=False)
        yneg1.setflags(write=False)
        object.__setattr__(self, "Y1", y1)
        object.__setattr__(self, "Yneg1", yneg1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.Y1.shape

    @property
    def observed(self) -> np.ndarray:
        return self.Y1 + self.Yneg1

    def count(self) -> int:
        return int(np.sum(self.Y1) + np.sum(self.Yneg1))


def masks_from_observations(ratings: BinaryRatings) -> ObservationMasks:
    y1 = np.zeros(ratings.shape)
    yneg1 = np.zeros(ratings.shape)
    positive = ratings.values == 1
    y1[ratings.users[positive], ratings.items[positive]] = 1.0
    yneg1[ratings.users[~positive], ratings.items[~positive]] = 1.0
    return ObservationMasks(y1, yneg1)
