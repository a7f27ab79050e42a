from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ClusterLabels:
    """
    A hard partition of N points into k clusters. Labels are 0-based in memory.
    """

    labels: np.ndarray
    k: int

    def __post_init__(self):
        labels = np.array(self.labels, dtype=np.int64, copy=True).reshape(-1)
        if self.k < 1:
            raise ValueError(f"cluster count must be positive, got {self.k}")
        if labels.size and (labels.min() < 0 or labels.max() >= self.k):
            raise ValueError(f"cluster label out of range [0, {self.k})")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return int(self.labels.size)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def empty_clusters(self) -> np.ndarray:
        """Indices of clusters nobody was assigned to."""
        return np.flatnonzero(self.sizes() == 0)

    def one_based(self) -> np.ndarray:
        return self.labels + 1
