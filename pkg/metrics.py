"""
Evaluation metrics: relative recovery error, sign accuracy and adjusted mutual information.

All logarithms are natural. AMI uses the arithmetic mean of the two entropies as its
normalizer.
"""

from dataclasses import dataclass

import numpy as np
from scipy.stats import hypergeom
from sklearn.metrics.cluster import contingency_matrix

from model_core.BinaryRatings import BinaryRatings

AMI_NORMALIZER = "arithmetic"


def relative_error(M_est: np.ndarray, M_true: np.ndarray) -> float:  # noqa: N803
    """||M_est - M_true||_F^2 / ||M_true||_F^2."""
    M_est = np.asarray(M_est, dtype=np.float64)  # noqa: N806
    M_true = np.asarray(M_true, dtype=np.float64)  # noqa: N806
    if M_est.shape != M_true.shape:
        raise ValueError(f"shape mismatch: {M_est.shape} vs {M_true.shape}")
    reference = float(np.sum(M_true**2))
    if reference == 0.0:
        raise ValueError("relative error is undefined for an all-zero ground truth")
    return float(np.sum((M_est - M_true) ** 2)) / reference


def accuracy(
    pred: np.ndarray, truth: BinaryRatings, eval_set: BinaryRatings | None = None
) -> float:
    """
    Fraction of evaluated entries whose predicted sign equals the observed sign.

    Parameters:
    pred (np.ndarray): n1 x n2 matrix of +1/-1 decisions
    truth (BinaryRatings): observed signs
    eval_set (BinaryRatings | None): the entries to score, a subset of truth; all of truth if None
    """
    pred = np.asarray(pred)
    if pred.shape != truth.shape:
        raise ValueError(f"prediction shape {pred.shape} does not match ratings {truth.shape}")
    if eval_set is None:
        eval_set = truth
    if len(eval_set) == 0:
        raise ValueError("accuracy needs a nonempty evaluation set")

    truth_index = truth.linear_index()
    order = np.argsort(truth_index)
    wanted = eval_set.linear_index()
    position = np.searchsorted(truth_index, wanted, sorter=order)
    position = np.minimum(position, truth_index.size - 1)
    found = order[position]
    if not np.array_equal(truth_index[found], wanted):
        raise ValueError("evaluation set contains entries that are not observed in truth")

    predicted = pred[truth.users[found], truth.items[found]]
    return float(np.mean(predicted == truth.values[found]))


def misclassification_rate(
    pred: np.ndarray, truth: BinaryRatings, eval_set: BinaryRatings | None = None
) -> float:
    return 1.0 - accuracy(pred, truth, eval_set)


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """
    counts[a, b] is the number of points labeled a by the first labeling and b by the second.
    """

    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def row_sums(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def column_sums(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    def is_matching(self) -> bool:
        """True when both labelings induce the same partition."""
        nonzero = self.counts > 0
        return bool(np.all(nonzero.sum(axis=0) == 1) and np.all(nonzero.sum(axis=1) == 1))


def contingency_table(labels_a, labels_b) -> ContingencyTable:
    labels_a = np.asarray(labels_a).reshape(-1)
    labels_b = np.asarray(labels_b).reshape(-1)
    if labels_a.size != labels_b.size:
        raise ValueError(f"label vectors differ in length: {labels_a.size} vs {labels_b.size}")
    if labels_a.size == 0:
        raise ValueError("label vectors are empty")
    return ContingencyTable(np.asarray(contingency_matrix(labels_a, labels_b), dtype=np.int64))


def entropy(counts: np.ndarray) -> float:
    counts = np.asarray(counts, dtype=np.float64)
    counts = counts[counts > 0]
    p = counts / counts.sum()
    return float(-np.sum(p * np.log(p)))


def mutual_information(table: ContingencyTable) -> float:
    n = table.total
    a, b = np.nonzero(table.counts)
    nij = table.counts[a, b].astype(np.float64)
    outer = table.row_sums[a].astype(np.float64) * table.column_sums[b]
    return float(np.sum(nij / n * np.log(n * nij / outer)))


def expected_mutual_information(table: ContingencyTable) -> float:
    """
    E[MI] when both labelings are drawn at random with the table's marginals fixed.

    Each cell count follows a hypergeometric law with population N, a_i successes and
    b_j draws.
    """
    n = table.total
    expected = 0.0
    for a_i in table.row_sums:
        for b_j in table.column_sums:
            low = max(1, a_i + b_j - n)
            high = min(a_i, b_j)
            if low > high:
                continue
            nij = np.arange(low, high + 1, dtype=np.float64)
            weights = hypergeom.pmf(nij, n, a_i, b_j)
            expected += float(np.sum(weights * nij / n * np.log(n * nij / (a_i * b_j))))
    return expected


def adjusted_mutual_information(labels_a, labels_b) -> float:
    """
    (MI - E[MI]) / (mean(H(A), H(B)) - E[MI]).

    Two labelings of the same partition score exactly 1, including the case where both are
    constant; a constant labeling against a non-constant one scores 0.
    """
    table = contingency_table(labels_a, labels_b)
    if table.is_matching():
        return 1.0

    expected = expected_mutual_information(table)
    normalizer = 0.5 * (entropy(table.row_sums) + entropy(table.column_sums))
    denominator = normalizer - expected
    # keep the sign, stay away from zero
    eps = np.finfo(np.float64).eps
    if denominator < 0.0:
        denominator = min(denominator, -eps)
    else:
        denominator = max(denominator, eps)
    return (mutual_information(table) - expected) / denominator
