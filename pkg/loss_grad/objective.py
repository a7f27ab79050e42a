"""
Masked logistic loss, its regularized form and their analytic gradients.

The penalty is lambda * (||P||^2 + ||S_U||^2 + ||Q||^2 + ||T_J||^2) with no factor 1/2,
so every penalty gradient carries 2 * lambda.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from errors import NumericalError
from loss_grad.ObservationMasks import ObservationMasks
from model_core.FactorSet import FactorBlock, FactorSet
from model_core.GroupAssignment import GroupAssignment
from model_core.latent import assemble_M, item_side, user_side


@dataclass(frozen=True, eq=False)
class GradientSet:
    dP: np.ndarray
    dQ: np.ndarray
    dS_U: np.ndarray
    dT_J: np.ndarray

    def block(self, block: FactorBlock) -> np.ndarray:
        return getattr(self, "d" + block.value)


def _check_lambda(lam: float) -> None:
    if not lam >= 0.0:
        raise ValueError(f"regularization weight must be nonnegative, got {lam}")


def _check_shape(M: np.ndarray, masks: ObservationMasks) -> np.ndarray:  # noqa: N803
    M = np.asarray(M, dtype=np.float64)  # noqa: N806
    if M.shape != masks.shape:
        raise ValueError(f"latent matrix shape {M.shape} does not match masks {masks.shape}")
    if not np.all(np.isfinite(M)):
        raise NumericalError("latent matrix contains non-finite values")
    return M


def loss_F(M: np.ndarray, masks: ObservationMasks) -> float:  # noqa: N802, N803
    """
    F = -sum(Y1 * log f(M) + Yneg1 * log(1 - f(M))).

    -log f(m) = log(1 + exp(-m)) and -log(1 - f(m)) = log(1 + exp(m)) are evaluated with
    `np.logaddexp`, so saturated entries keep their exact linear tail.
    """
    M = _check_shape(M, masks)  # noqa: N806
    positive = masks.Y1 * np.logaddexp(0.0, -M)
    negative = masks.Yneg1 * np.logaddexp(0.0, M)
    return float(np.sum(positive) + np.sum(negative))


def penalty(factors: FactorSet, lam: float) -> float:
    _check_lambda(lam)
    return lam * factors.squared_norm()


def loss_L(  # noqa: N802
    factors: FactorSet, assignment: GroupAssignment, masks: ObservationMasks, lam: float
) -> float:
    """L = F(M) + lambda * (||P||^2 + ||S_U||^2 + ||Q||^2 + ||T_J||^2)."""
    _check_lambda(lam)
    return loss_F(assemble_M(factors, assignment), masks) + penalty(factors, lam)


def grad_M(M: np.ndarray, masks: ObservationMasks) -> np.ndarray:  # noqa: N802, N803
    """
    dF/dM = Y1 * (f(M) - 1) + Yneg1 * f(M); exactly zero off Omega.
    """
    M = _check_shape(M, masks)  # noqa: N806
    # f(M) - 1 == -f(-M), which keeps precision when f(M) is close to 1
    return masks.Y1 * -expit(-M) + masks.Yneg1 * expit(M)


def block_gradient(
    block: FactorBlock,
    factors: FactorSet,
    assignment: GroupAssignment,
    masks: ObservationMasks,
    lam: float,
    G: np.ndarray | None = None,  # noqa: N803
) -> np.ndarray:
    """
    Gradient of L with respect to a single block.

    The group blocks sum the entity-level gradient over the members of each group:
    dS_U = I_U (G (Q + T)) + 2 lambda S_U, and likewise dT_J with I_J and G'(P + S).

    Parameters:
    G (np.ndarray | None): precomputed grad_M at the current factors, if available
    """
    _check_lambda(lam)
    if G is None:
        G = grad_M(assemble_M(factors, assignment), masks)  # noqa: N806

    if block in (FactorBlock.P, FactorBlock.S_U):
        entity = G @ item_side(factors, assignment)
        if block is FactorBlock.P:
            return entity + 2.0 * lam * factors.P
        return assignment.user_indicator() @ entity + 2.0 * lam * factors.S_U

    entity = G.T @ user_side(factors, assignment)
    if block is FactorBlock.Q:
        return entity + 2.0 * lam * factors.Q
    return assignment.item_indicator() @ entity + 2.0 * lam * factors.T_J


def grad_all(
    factors: FactorSet, assignment: GroupAssignment, masks: ObservationMasks, lam: float
) -> GradientSet:
    _check_lambda(lam)
    G = grad_M(assemble_M(factors, assignment), masks)  # noqa: N806
    return GradientSet(
        *(
            np.asarray(block_gradient(block, factors, assignment, masks, lam, G))
            for block in (FactorBlock.P, FactorBlock.Q, FactorBlock.S_U, FactorBlock.T_J)
        )
    )
