"""
Assembly of the latent matrix M = (P + I_U' S_U)(Q + I_J' T_J)' and its link to probabilities.
"""

import numpy as np
from scipy.special import expit

from errors import NumericalError
from model_core.FactorSet import FactorSet
from model_core.GroupAssignment import GroupAssignment
from settings import decision_threshold


def _require_finite(values, what: str) -> None:
    if not np.all(np.isfinite(values)):
        raise NumericalError(f"{what} contains non-finite values")


def sigmoid(z):
    """
    The logistic link 1 / (1 + exp(-z)), element-wise.

    Evaluated through `scipy.special.expit`, which saturates to 0 or 1 without overflow for
    arguments of any magnitude. Returns a float for scalar input.
    """
    values = np.asarray(z, dtype=np.float64)
    _require_finite(values, "sigmoid input")
    result = expit(values)
    return float(result) if result.ndim == 0 else result


def expand_group_factors(group_factors: np.ndarray, groups: np.ndarray) -> np.ndarray:
    """
    Duplicates group rows out to entity rows: S = I_U' S_U.

    Row u of the result is exactly row groups[u] of `group_factors`.
    """
    groups = np.asarray(groups)
    if groups.size and (groups.min() < 0 or groups.max() >= group_factors.shape[0]):
        raise ValueError(
            f"group index out of range [0, {group_factors.shape[0]}) in expand_group_factors"
        )
    return np.asarray(group_factors)[groups]


def user_side(factors: FactorSet, assignment: GroupAssignment) -> np.ndarray:
    """P + S, the n1 x K matrix of effective user vectors."""
    return factors.P + expand_group_factors(factors.S_U, assignment.user_group)


def item_side(factors: FactorSet, assignment: GroupAssignment) -> np.ndarray:
    """Q + T, the n2 x K matrix of effective item vectors."""
    return factors.Q + expand_group_factors(factors.T_J, assignment.item_group)


def check_dimensions(factors: FactorSet, assignment: GroupAssignment) -> None:
    if (factors.n1, factors.n2) != (assignment.n1, assignment.n2):
        raise ValueError(
            f"factors cover {factors.n1} x {factors.n2} entities, "
            f"assignment covers {assignment.n1} x {assignment.n2}"
        )
    if (factors.m1, factors.m2) != (assignment.m1, assignment.m2):
        raise ValueError(
            f"factors hold {factors.m1} user / {factors.m2} item groups, "
            f"assignment declares {assignment.m1} / {assignment.m2}"
        )


def assemble_M(factors: FactorSet, assignment: GroupAssignment) -> np.ndarray:  # noqa: N802
    """
    M_ui = (p_u + s_{v_u})'(q_i + t_{j_i}), as one n1 x n2 product of rank at most K.
    """
    check_dimensions(factors, assignment)
    return user_side(factors, assignment) @ item_side(factors, assignment).T


def predict_probabilities(M: np.ndarray) -> np.ndarray:  # noqa: N803
    """Element-wise P(Y_ui = +1) = f(M_ui)."""
    M = np.asarray(M, dtype=np.float64)  # noqa: N806
    _require_finite(M, "latent matrix")
    return expit(M)


def binarize_predictions(probs: np.ndarray, threshold: float = decision_threshold) -> np.ndarray:
    """
    Hard +1/-1 decisions. A probability exactly at the threshold maps to +1.

    Parameters:
    probs (np.ndarray): probabilities in [0, 1]
    threshold (float): decision threshold in the open interval (0, 1)
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    probs = np.asarray(probs, dtype=np.float64)
    if np.any(np.isnan(probs)) or np.any(probs < 0.0) or np.any(probs > 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    return np.where(probs >= threshold, 1, -1).astype(np.int8)
