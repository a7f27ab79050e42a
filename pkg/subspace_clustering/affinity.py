from dataclasses import dataclass

import numpy as np

from settings import affinity_top_q
from subspace_clustering.SelfExpression import SelfExpression


@dataclass(frozen=True, eq=False)
class AffinityGraph:
    """Symmetric, nonnegative N x N edge weights with a zero diagonal."""

    W: np.ndarray

    def __post_init__(self):
        W = np.array(self.W, dtype=np.float64, copy=True)  # noqa: N806
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError(f"affinity must be square, got shape {W.shape}")
        if np.any(W < 0.0) or not np.array_equal(W, W.T):
            raise ValueError("affinity must be symmetric and nonnegative")
        W.setflags(write=False)
        object.__setattr__(self, "W", W)

    @property
    def size(self) -> int:
        return self.W.shape[0]


def keep_top_entries(magnitudes: np.ndarray, q: int) -> np.ndarray:
    """Zeroes all but the q largest entries of every column."""
    n = magnitudes.shape[0]
    if q <= 0 or q >= n:
        return magnitudes
    order = np.argsort(-magnitudes, axis=0, kind="stable")
    kept = np.zeros_like(magnitudes)
    rows = order[:q]
    columns = np.broadcast_to(np.arange(magnitudes.shape[1]), rows.shape)
    kept[rows, columns] = magnitudes[rows, columns]
    return kept


def build_affinity(
    expression: SelfExpression | np.ndarray, top_q: int = affinity_top_q
) -> AffinityGraph:
    """
    W = |C| + |C'|, optionally after keeping only the `top_q` largest |C| entries per column.
    """
    C = expression.C if isinstance(expression, SelfExpression) else np.asarray(expression)  # noqa: N806
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError(f"self-expression matrix must be square, got shape {C.shape}")
    magnitudes = keep_top_entries(np.abs(C), top_q)
    W = magnitudes + magnitudes.T  # noqa: N806
    np.fill_diagonal(W, 0.0)
    return AffinityGraph(W)
